// Navigation states, their trident/dual quaternion embeddings, and the three
// continuous-time strapdown models (traditional e-frame, dual quaternion +
// position vector, trident quaternion).
#pragma once

#include <cmath>
#include <utility>

#include "triq/algebra.hpp"
#include "triq/earth.hpp"
#include "triq/error.hpp"

namespace triq {

/// Attitude q_eb (frame e to frame b), velocity v^e and position r^e.
struct NavState {
  Quaternion q_eb = Quaternion::identity();
  Vec3 v_e = Vec3::Zero();
  Vec3 r_e = Vec3::Zero();

  bool is_valid() const { return q_eb.is_unit() && v_e.allFinite() && r_e.allFinite(); }
};

/// Time derivative of a NavState; q_dot is not a rotation.
struct NavStateRate {
  Quaternion q_dot;
  Vec3 v_dot = Vec3::Zero();
  Vec3 r_dot = Vec3::Zero();

  friend NavStateRate operator+(const NavStateRate& a, const NavStateRate& b) {
    return {a.q_dot + b.q_dot, a.v_dot + b.v_dot, a.r_dot + b.r_dot};
  }
  friend NavStateRate operator*(const NavStateRate& a, double k) {
    return {k * a.q_dot, k * a.v_dot, k * a.r_dot};
  }
  friend NavState operator+(const NavState& s, const NavStateRate& d) {
    return {s.q_eb + d.q_dot, s.v_e + d.v_dot, s.r_e + d.r_dot};
  }
};

/// C_i^e r_dot^i = v^e + w_ie^e x r^e.
Vec3 total_velocity_e(const Vec3& v_e, const Vec3& r_e, const EarthModel& model);

// ---- trident quaternion model ----------------------------------------------

/// q + e1 (v^e + w_ie x r^e) o q / 2 + e2 r^e o q / 2.
/// Throws NonUnitQuaternion for an invalid attitude.
TridentQuaternion embed_state(const NavState& s, const EarthModel& model);

/// r^e = 2 q'' o q*, v^e = 2 q' o q* - w_ie x r^e.
/// Throws NonUnitTrident when the real part is not unit and
/// ScalarResidueTooLarge when either product has a scalar part beyond the
/// unit tolerance (relative to its vector size).
NavState recover_state(const TridentQuaternion& t, const EarthModel& model);

/// recover_state followed by embed_state; renormalises the attitude and
/// restores the exact structure of both imaginary parts.
TridentQuaternion reembed(const TridentQuaternion& t, const EarthModel& model);

enum class TwistVariant {
  BodySide,   // x1 = 0, x2 = -C_i^e r_dot^i
  EarthSide,  // x1 = C_i^b r_dot^i, x2 = 0
};

struct TwistPair {
  TridentQuaternion body;   // w_ib^b + e1 f^b + e2 x1
  TridentQuaternion earth;  // w_ie^e - e1 g^e + e2 x2
};

/// Trident twists. `total_vel_e` is C_i^e r_dot^i; for EarthSide it is
/// rotated into the body frame with q_eb.
TwistPair make_twists(const Vec3& omega_ib_b, const Vec3& f_b, const Vec3& g_e,
                      const Vec3& total_vel_e, const Quaternion& q_eb, TwistVariant variant,
                      const EarthModel& model);

/// dq/dt = (t o body - earth o t) / 2.
TridentQuaternion triq_rhs(const TridentQuaternion& t, const TwistPair& twists);

/// Twists evaluated at the state encoded by t (gravity from its position,
/// total velocity from 2 q' o q*).
TwistPair state_twists(const TridentQuaternion& t, const Vec3& omega_ib_b, const Vec3& f_b,
                       TwistVariant variant, const EarthModel& model);

// ---- dual quaternion + position vector model --------------------------------

struct DqvState {
  DualQuaternion dq;  // q_eb + eps (C_i^e r_dot^i) o q_eb / 2
  Vec3 r_e = Vec3::Zero();

  friend DqvState operator+(const DqvState& a, const DqvState& b) { return {a.dq + b.dq, a.r_e + b.r_e}; }
  friend DqvState operator*(const DqvState& a, double k) { return {k * a.dq, k * a.r_e}; }
};

DqvState embed_dqv(const NavState& s, const EarthModel& model);
NavState recover_dqv(const DqvState& s, const EarthModel& model);

/// Dual quaternion rate with twists w_ib^b + eps f^b and w_ie^e - eps g^e,
/// plus r_dot^e = 2 q' o q* - w_ie x r^e.
DqvState dqv_rhs(const DqvState& s, const Vec3& omega_ib_b, const Vec3& f_b,
                 const EarthModel& model);

// ---- traditional e-frame mechanisation ----------------------------------------

/// 2 q_dot = q o w_ib^b - w_ie^e o q; v_dot = C_b^e f^b - 2 w_ie x v + g_l^e; r_dot = v.
NavStateRate traditional_rhs(const NavState& s, const Vec3& omega_ib_b, const Vec3& f_b,
                             const EarthModel& model);

NavState normalize_attitude(const NavState& s);

// ---- RK4 oracle -----------------------------------------------------------------

/// Number of steps of size `step` spanning [t0, t1]; throws InvalidStep if
/// the step is not positive or does not divide the interval.
long rk4_step_count(double t0, double t1, double step);

/// Classical fourth-order Runge-Kutta. rhs(t, x) returns a rate R with
/// State + R, R + R and R * double defined; `normalize` runs after every step.
template <class State, class Rhs, class Normalize>
State rk4_propagate(Rhs&& rhs, State x, double t0, double t1, double step, Normalize&& normalize) {
  const long n = rk4_step_count(t0, t1, step);
  const double h = (t1 - t0) / double(n);
  for (long i = 0; i < n; ++i) {
    const double t = t0 + double(i) * h;
    const auto k1 = rhs(t, x);
    const auto k2 = rhs(t + 0.5 * h, x + k1 * (0.5 * h));
    const auto k3 = rhs(t + 0.5 * h, x + k2 * (0.5 * h));
    const auto k4 = rhs(t + h, x + k3 * h);
    x = normalize(x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0));
  }
  return x;
}

}  // namespace triq
