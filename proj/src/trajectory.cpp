#include "triq/trajectory.hpp"

#include <cmath>

#include "triq/error.hpp"

namespace triq {

void ScenarioParams::validate() const {
  if (!(imu_rate > 0.0)) throw Error(ErrorKind::InvalidConfig, "imu_rate must be > 0");
  if (!(duration >= 0.0)) throw Error(ErrorKind::InvalidConfig, "duration must be >= 0");
  if (!(accel_frequency > 0.0)) throw Error(ErrorKind::InvalidConfig, "accel_frequency must be > 0");
  if (!(std::abs(start.latitude) < std::numbers::pi / 2.0)) {
    throw Error(ErrorKind::InvalidConfig, "start latitude must be off the poles");
  }
}

long ScenarioParams::sample_count() const { return std::lround(std::floor(duration * imu_rate + 1e-9)); }

Quaternion truth_attitude(double t, const ScenarioParams& p) {
  const double c = std::cos(0.5 * p.cone_angle), s = std::sin(0.5 * p.cone_angle);
  return {c, 0.0, s * std::cos(p.cone_rate * t), s * std::sin(p.cone_rate * t)};
}

Quaternion truth_attitude_rate(double t, const ScenarioParams& p) {
  const double s = std::sin(0.5 * p.cone_angle) * p.cone_rate;
  return {0.0, 0.0, -s * std::sin(p.cone_rate * t), s * std::cos(p.cone_rate * t)};
}

LocalTruth truth_vel_pos(double t, const ScenarioParams& p, const EarthModel& model) {
  const double a = p.accel_amplitude, w = p.accel_frequency;
  LocalTruth out;
  out.v_n = {0.0, 0.0, p.v0 - (a * std::cos(w * t) - a) / w};
  out.a_n = {0.0, 0.0, a * std::sin(w * t)};
  const double distance = p.v0 * t - (a * std::sin(w * t) - a * w * t) / (w * w);
  const double radius =
      (transverse_radius(p.start.latitude, model) + p.start.height) * std::cos(p.start.latitude);
  out.position = p.start;
  out.position.longitude = p.start.longitude + distance / radius;
  return out;
}

NavState truth_to_eframe(double t, const ScenarioParams& p, const EarthModel& model) {
  const LocalTruth lt = truth_vel_pos(t, p, model);
  NavState s;
  s.q_eb = c_en(lt.position) * truth_attitude(t, p);
  s.v_e = dcm_e_to_n(lt.position).transpose() * lt.v_n;
  s.r_e = geodetic_to_ecef(lt.position, model);
  return s;
}

ImuRates imu_rates(double t, const ScenarioParams& p, const EarthModel& model) {
  const LocalTruth lt = truth_vel_pos(t, p, model);
  const Quaternion q_nb = truth_attitude(t, p);
  const Quaternion q_nb_dot = truth_attitude_rate(t, p);
  const Vec3 w_ie_n = earth_rate_n(lt.position, model);
  const Vec3 w_en_n = transport_rate_n(lt.position, lt.v_n, model);
  const Vec3 w_in_n = w_ie_n + w_en_n;

  const Mat3 c_en_dcm = dcm_e_to_n(lt.position);
  const Vec3 g_n = c_en_dcm * local_gravity_e(geodetic_to_ecef(lt.position, model), model);

  ImuRates out;
  out.omega_ib_b = (q_nb.conjugate() * (2.0 * q_nb_dot + Quaternion::vector(w_in_n) * q_nb)).v();
  const Vec3 f_n = lt.a_n + (2.0 * w_ie_n + w_en_n).cross(lt.v_n) - g_n;
  out.f_b = rotate_frame(q_nb, f_n);
  return out;
}

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

std::vector<ImuSample> synthesize_imu(const ScenarioParams& p, const EarthModel& model,
                                      ImuMode mode) {
  p.validate();
  const long count = p.sample_count();
  const GaussRule rule = gauss_legendre(8);
  std::vector<ImuSample> out;
  out.reserve(std::size_t(count));
  for (long k = 1; k <= count; ++k) {
    ImuSample s;
    s.t = double(k) / p.imu_rate;
    if (mode == ImuMode::Rates) {
      const ImuRates r = imu_rates(s.t, p, model);
      s.gyro = r.omega_ib_b;
      s.accel = r.f_b;
    } else {
      const double ta = double(k - 1) / p.imu_rate;
      const double half = 0.5 * (s.t - ta), mid = 0.5 * (s.t + ta);
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const ImuRates r = imu_rates(mid + half * rule.nodes[i], p, model);
        s.gyro += (half * rule.weights[i]) * r.omega_ib_b;
        s.accel += (half * rule.weights[i]) * r.f_b;
      }
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace triq
