// Analytic coning-flight scenario: truth attitude/velocity/position and the
// exactly consistent gyro and accelerometer outputs.
//
// The vehicle flies east at constant latitude and height with east speed
// v0 - (a cos(w t) - a) / w, while the body cones about the local north axis:
// q_nb = [cos(alpha/2), sin(alpha/2) (0, cos(zeta t), sin(zeta t))].
#pragma once

#include <numbers>
#include <vector>

#include "triq/earth.hpp"
#include "triq/imu.hpp"
#include "triq/kinematics.hpp"

namespace triq {

struct ScenarioParams {
  double v0 = 500.0;                                 // initial east speed [m/s]
  double accel_amplitude = 10.0;                     // a [m/s^2]
  double accel_frequency = 0.02 * std::numbers::pi;  // w [rad/s]
  double cone_angle = 10.0 * std::numbers::pi / 180.0;  // alpha [rad]
  double cone_rate = 0.74 * std::numbers::pi;           // zeta [rad/s]
  GeodeticPosition start{};
  double duration = 200.0;  // [s]
  double imu_rate = 100.0;  // [Hz]

  static ScenarioParams paper_vi() { return {}; }
  /// Throws Error(InvalidConfig).
  void validate() const;
  double sample_interval() const { return 1.0 / imu_rate; }
  long sample_count() const;
};

/// Truth q_nb(t).
Quaternion truth_attitude(double t, const ScenarioParams& p);
/// d q_nb / dt.
Quaternion truth_attitude_rate(double t, const ScenarioParams& p);

struct LocalTruth {
  Vec3 v_n = Vec3::Zero();  // (north, up, east) [m/s]
  Vec3 a_n = Vec3::Zero();  // dv^n/dt
  GeodeticPosition position;
};

LocalTruth truth_vel_pos(double t, const ScenarioParams& p, const EarthModel& model);

/// Truth as an e-frame NavState: q_eb = q_en o q_nb.
NavState truth_to_eframe(double t, const ScenarioParams& p, const EarthModel& model);

struct ImuRates {
  Vec3 omega_ib_b = Vec3::Zero();
  Vec3 f_b = Vec3::Zero();
};

/// Exact gyro/accelerometer rates:
///   w_ib^b = q_nb* o (2 q_nb_dot + w_in^n o q_nb)
///   f^b = C_n^b (v_dot^n + (2 w_ie^n + w_en^n) x v^n - g_l^n)
ImuRates imu_rates(double t, const ScenarioParams& p, const EarthModel& model);

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int n);

/// Samples at t_k = k / imu_rate, k = 1..K. Increments are integrals of
/// the exact rates over each sample interval by 8-point Gauss-Legendre.
std::vector<ImuSample> synthesize_imu(const ScenarioParams& p, const EarthModel& model,
                                      ImuMode mode = ImuMode::Increments);

}  // namespace triq
