#include "triq/earth.hpp"

#include <cmath>
#include <numbers>

#include "triq/error.hpp"

namespace triq {

void EarthModel::validate() const {
  if (!(semi_major_axis > 0.0)) throw Error(ErrorKind::InvalidConfig, "semi-major axis must be > 0");
  if (!(flattening >= 0.0 && flattening < 1.0)) {
    throw Error(ErrorKind::InvalidConfig, "flattening must lie in [0, 1)");
  }
  if (!(rotation_rate >= 0.0)) throw Error(ErrorKind::InvalidConfig, "rotation rate must be >= 0");
  if (gravity == GravityModel::Normal && !(gravity_equator > 0.0 && gravity_pole > 0.0 && gm > 0.0)) {
    throw Error(ErrorKind::InvalidConfig, "gravity parameters must be positive");
  }
}

double transverse_radius(double latitude, const EarthModel& model) {
  const double s = std::sin(latitude);
  return model.semi_major_axis / std::sqrt(1.0 - model.eccentricity_squared() * s * s);
}

double meridian_radius(double latitude, const EarthModel& model) {
  const double e2 = model.eccentricity_squared();
  const double s = std::sin(latitude);
  const double w = 1.0 - e2 * s * s;
  return model.semi_major_axis * (1.0 - e2) / (w * std::sqrt(w));
}

Vec3 geodetic_to_ecef(const GeodeticPosition& p, const EarthModel& model) {
  const double n = transverse_radius(p.latitude, model);
  const double cl = std::cos(p.latitude), sl = std::sin(p.latitude);
  return {(n + p.height) * cl * std::cos(p.longitude), (n + p.height) * cl * std::sin(p.longitude),
          (n * (1.0 - model.eccentricity_squared()) + p.height) * sl};
}

GeodeticPosition ecef_to_geodetic(const Vec3& r_e, const EarthModel& model) {
  const double e2 = model.eccentricity_squared();
  const double p = std::hypot(r_e.x(), r_e.y());
  const double z = r_e.z();
  GeodeticPosition out;
  out.longitude = std::atan2(r_e.y(), r_e.x());
  if (p == 0.0 && z == 0.0) {
    throw Error(ErrorKind::NearSingularPosition, "geodetic conversion of the earth centre");
  }

  auto height_at = [&](double lat) {
    const double n = transverse_radius(lat, model);
    if (std::abs(lat) < std::numbers::pi / 4.0) return p / std::cos(lat) - n;
    return z / std::sin(lat) - n * (1.0 - e2);
  };

  double lat = std::atan2(z, p * (1.0 - e2));
  for (int iter = 0; iter < 20; ++iter) {
    const double n = transverse_radius(lat, model);
    const double h = height_at(lat);
    const double next = std::atan2(z, p * (1.0 - e2 * n / (n + h)));
    const double change = std::abs(next - lat);
    lat = next;
    if (change <= 1e-15) {
      out.latitude = lat;
      out.height = height_at(lat);
      return out;
    }
  }
  throw Error(ErrorKind::ConvergenceFailure, "ecef_to_geodetic did not converge in 20 iterations");
}

double normal_gravity(double latitude, double height, const EarthModel& model) {
  const double a = model.semi_major_axis;
  const double b = model.semi_minor_axis();
  const double f = model.flattening;
  const double e2 = model.eccentricity_squared();
  const double s2 = std::sin(latitude) * std::sin(latitude);
  const double k = b * model.gravity_pole / (a * model.gravity_equator) - 1.0;
  const double gamma = model.gravity_equator * (1.0 + k * s2) / std::sqrt(1.0 - e2 * s2);
  const double m = model.rotation_rate * model.rotation_rate * a * a * b / model.gm;
  return gamma * (1.0 - 2.0 / a * (1.0 + f + m - 2.0 * f * s2) * height +
                  3.0 * height * height / (a * a));
}

namespace {

void check_position(const Vec3& r_e, const EarthModel& model) {
  if (!(r_e.norm() > 0.5 * model.semi_major_axis)) {
    throw Error(ErrorKind::NearSingularPosition, "gravity requested far below the surface");
  }
}

}  // namespace

Vec3 centripetal_e(const Vec3& r_e, const EarthModel& model) {
  const Vec3 w = model.earth_rate_e();
  return w.cross(w.cross(r_e));
}

Vec3 local_gravity_e(const Vec3& r_e, const EarthModel& model) {
  check_position(r_e, model);
  if (model.gravity == GravityModel::None) return -centripetal_e(r_e, model);
  const GeodeticPosition p = ecef_to_geodetic(r_e, model);
  const double cl = std::cos(p.latitude);
  const Vec3 up(cl * std::cos(p.longitude), cl * std::sin(p.longitude), std::sin(p.latitude));
  return -normal_gravity(p.latitude, p.height, model) * up;
}

Vec3 gravitation_e(const Vec3& r_e, const EarthModel& model) {
  check_position(r_e, model);
  if (model.gravity == GravityModel::None) return Vec3::Zero();
  return local_gravity_e(r_e, model) + centripetal_e(r_e, model);
}

Mat3 curvature_matrix(const GeodeticPosition& p, const EarthModel& model) {
  const double cl = std::cos(p.latitude);
  if (std::abs(cl) <= 1e-9) {
    throw Error(ErrorKind::PolarSingularity, "curvature matrix is singular at the poles");
  }
  Mat3 rc = Mat3::Zero();
  rc(0, 2) = 1.0 / ((transverse_radius(p.latitude, model) + p.height) * cl);
  rc(1, 0) = 1.0 / (meridian_radius(p.latitude, model) + p.height);
  rc(2, 1) = 1.0;
  return rc;
}

Mat3 dcm_e_to_n(const GeodeticPosition& p) {
  const double cl = std::cos(p.latitude), sl = std::sin(p.latitude);
  const double co = std::cos(p.longitude), so = std::sin(p.longitude);
  Mat3 c;
  c << -sl * co, -sl * so, cl,  // north
      cl * co, cl * so, sl,     // up
      -so, co, 0.0;             // east
  return c;
}

Quaternion c_en(const GeodeticPosition& p) {
  // q o r^n o q* = C_n^e r^n, so q is the quaternion of C_n^e.
  return Quaternion::from_rotation_matrix(dcm_e_to_n(p).transpose());
}

Vec3 earth_rate_n(const GeodeticPosition& p, const EarthModel& model) {
  return model.rotation_rate * Vec3(std::cos(p.latitude), std::sin(p.latitude), 0.0);
}

Vec3 transport_rate_n(const GeodeticPosition& p, const Vec3& v_n, const EarthModel& model) {
  const Vec3 rates = curvature_matrix(p, model) * v_n;  // (lambda_dot, L_dot, h_dot)
  const double lon_rate = rates.x(), lat_rate = rates.y();
  // e-frame z axis is (cos L, sin L, 0) in (north, up, east); latitude turns about west.
  return {lon_rate * std::cos(p.latitude), lon_rate * std::sin(p.latitude), -lat_rate};
}

}  // namespace triq
