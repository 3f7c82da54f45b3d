// Functional iterative integration of the trident quaternion kinematic
// equation over windows of IMU samples.
//
// Within a window of length t_N, time maps to tau in [-1, 1]. The state is a
// Chebyshev series of trident quaternions, refined by the Picard map
//
//   q_{l+1}(tau) = q(0) + t_N/4 * int_{-1}^{tau} (q_l o w_ib^b - w_ie,l^e o q_l) dtau
//
// with the body twist fitted to the IMU data once per window and the earth
// twist (gravity along the current position iterate, total velocity from the
// current velocity iterate) refreshed every iteration.
#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "triq/chebyshev.hpp"
#include "triq/earth.hpp"
#include "triq/imu.hpp"
#include "triq/kinematics.hpp"

namespace triq {

struct SolverConfig {
  std::size_t n_ob = 7;        // body twist fit degree
  std::size_t n_oe = 7;        // earth twist (gravity) fit degree
  std::size_t m_q = 9;         // state truncation degree
  std::size_t max_iters = 9;
  double rms_tol = 1e-16;
  std::size_t gravity_nodes = 0;  // P; 0 selects m_q + 1
  TwistVariant variant = TwistVariant::BodySide;

  /// Defaults for N samples per window: n_ob = n_oe = N - 1, m_q = N + 1,
  /// max_iters = N + 1.
  static SolverConfig for_window(std::size_t n);
  std::size_t node_count() const { return gravity_nodes == 0 ? m_q + 1 : gravity_nodes; }
  /// Throws DegreeTooHigh / InvalidConfig for a window of n samples.
  void validate(std::size_t n) const;
};

struct BodyTwistFit {
  TridentChebSeries series;  // real: angular rate, e1: specific force
  double residual = 0.0;     // max abs misfit over all equations
};

struct SolveReport {
  std::size_t iterations = 0;
  double rms_change = 0.0;
  bool converged = false;
  TridentChebSeries series;
  TridentChebSeries body_twist;   // twist series used in the final iteration
  TridentChebSeries earth_twist;
};

struct WindowSolution {
  NavState end;
  SolveReport report;
};

/// Least-squares Chebyshev fit of the gyro/accelerometer data.
/// Throws DegreeTooHigh if n_ob > N - 1, SingularFit on rank deficiency.
BodyTwistFit fit_body_twist(const ImuWindow& w, const SolverConfig& cfg);

/// Earth twist series for the current iterate: w_ie^e in the real part,
/// the node fit of -g^e along the iterate's position in e1, and (BodySide)
/// -2 q' o q* truncated to m_q in e2.
TridentChebSeries earth_twist_coeffs(const TridentChebSeries& current, const EarthModel& model,
                                     const SolverConfig& cfg);

/// Body twist used in an iteration: the fitted series, plus 2 q* o q'
/// (truncated to m_q) in e2 for the EarthSide variant.
TridentChebSeries body_twist_for_iterate(const TridentChebSeries& fitted,
                                         const TridentChebSeries& current,
                                         const SolverConfig& cfg);

/// One Picard map application, truncated to m_q; the constant term is set
/// so that the result equals q0 at tau = -1.
TridentChebSeries picard_step(const TridentChebSeries& current, const TridentChebSeries& body,
                              const TridentChebSeries& earth, const TridentQuaternion& q0,
                              double t_n, const SolverConfig& cfg);

/// Root-mean-square difference over every scalar of every coefficient.
double coefficient_rms_change(const TridentChebSeries& a, const TridentChebSeries& b);

/// 2 dq/dt - (q o body - earth o q) at tau.
TridentQuaternion ode_residual(const SolveReport& report, double t_n, double tau);

WindowSolution solve_window(const ImuWindow& w, const NavState& s0, const EarthModel& model,
                            const SolverConfig& cfg);

struct TrajectoryPoint {
  double t = 0.0;
  NavState state;
  std::size_t iterations = 0;
  double rms_change = 0.0;
  bool converged = true;
};

/// Chains solve_window; each window starts from the previous window's
/// recovered end state. The first point is s0 at windows.front().t_start.
/// `on_window`, when set, sees every window's solution.
std::vector<TrajectoryPoint> solve_trajectory(
    const std::vector<ImuWindow>& windows, const NavState& s0, const EarthModel& model,
    const SolverConfig& cfg,
    const std::function<void(const ImuWindow&, const WindowSolution&)>& on_window = {});

}  // namespace triq
