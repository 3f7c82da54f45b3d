#include "triq/kinematics.hpp"

#include <algorithm>
#include <cmath>

namespace triq {

namespace {

void check_residue(const Quaternion& m, const char* what) {
  if (std::abs(m.s()) > kUnitTolerance * std::max(1.0, m.v().norm())) {
    throw Error(ErrorKind::ScalarResidueTooLarge, what);
  }
}

}  // namespace

Vec3 total_velocity_e(const Vec3& v_e, const Vec3& r_e, const EarthModel& model) {
  return v_e + model.earth_rate_e().cross(r_e);
}

TridentQuaternion embed_state(const NavState& s, const EarthModel& model) {
  if (!s.q_eb.is_unit()) throw Error(ErrorKind::NonUnitQuaternion, "embed_state attitude");
  const Quaternion& q = s.q_eb;
  const Vec3 vi = total_velocity_e(s.v_e, s.r_e, model);
  return {q, 0.5 * (Quaternion::vector(vi) * q), 0.5 * (Quaternion::vector(s.r_e) * q)};
}

NavState recover_state(const TridentQuaternion& t, const EarthModel& model) {
  if (!t.real().is_unit()) throw Error(ErrorKind::NonUnitTrident, "recover_state real part");
  // q^-1 rather than q*: the real part is unit only to roundoff, and at
  // position scale a relative norm error of 1e-16 is already ~1e-9 m.
  const Quaternion qi = (1.0 / t.real().squared_norm()) * t.real().conjugate();
  const Quaternion vel = 2.0 * (t.e1() * qi);
  const Quaternion pos = 2.0 * (t.e2() * qi);
  check_residue(vel, "velocity part of the trident quaternion");
  check_residue(pos, "position part of the trident quaternion");
  NavState s;
  s.q_eb = t.real().normalized();
  s.r_e = pos.v();
  s.v_e = vel.v() - model.earth_rate_e().cross(s.r_e);
  return s;
}

TridentQuaternion reembed(const TridentQuaternion& t, const EarthModel& model) {
  return embed_state(recover_state(t, model), model);
}

TwistPair make_twists(const Vec3& omega_ib_b, const Vec3& f_b, const Vec3& g_e,
                      const Vec3& total_vel_e, const Quaternion& q_eb, TwistVariant variant,
                      const EarthModel& model) {
  Quaternion x1, x2;
  if (variant == TwistVariant::BodySide) {
    x2 = Quaternion::vector(-total_vel_e);
  } else {
    x1 = Quaternion::vector(rotate_frame(q_eb, total_vel_e));
  }
  return {{Quaternion::vector(omega_ib_b), Quaternion::vector(f_b), x1},
          {Quaternion::vector(model.earth_rate_e()), Quaternion::vector(-g_e), x2}};
}

TridentQuaternion triq_rhs(const TridentQuaternion& t, const TwistPair& twists) {
  return 0.5 * (t * twists.body - twists.earth * t);
}

TwistPair state_twists(const TridentQuaternion& t, const Vec3& omega_ib_b, const Vec3& f_b,
                       TwistVariant variant, const EarthModel& model) {
  const Quaternion& q = t.real();
  const Vec3 r_e = (2.0 * (t.e2() * q.conjugate())).v();
  const Vec3 g_e = gravitation_e(r_e, model);
  // Built straight from the trident parts so that both variants satisfy
  // q o x1 - x2 o q = 2 |q|^2 q' even when q drifts off the unit sphere.
  Quaternion x1, x2;
  if (variant == TwistVariant::BodySide) {
    x2 = Quaternion::vector(-(2.0 * (t.e1() * q.conjugate())).v());
  } else {
    x1 = Quaternion::vector((2.0 * (q.conjugate() * t.e1())).v());
  }
  return {{Quaternion::vector(omega_ib_b), Quaternion::vector(f_b), x1},
          {Quaternion::vector(model.earth_rate_e()), Quaternion::vector(-g_e), x2}};
}

DqvState embed_dqv(const NavState& s, const EarthModel& model) {
  if (!s.q_eb.is_unit()) throw Error(ErrorKind::NonUnitQuaternion, "embed_dqv attitude");
  const Vec3 vi = total_velocity_e(s.v_e, s.r_e, model);
  return {{s.q_eb, 0.5 * (Quaternion::vector(vi) * s.q_eb)}, s.r_e};
}

NavState recover_dqv(const DqvState& s, const EarthModel& model) {
  if (!s.dq.real().is_unit()) throw Error(ErrorKind::NonUnitQuaternion, "recover_dqv real part");
  const Quaternion vel = 2.0 * (s.dq.dual() * s.dq.real().conjugate());
  check_residue(vel, "dual part of the dual quaternion");
  NavState out;
  out.q_eb = s.dq.real().normalized();
  out.r_e = s.r_e;
  out.v_e = vel.v() - model.earth_rate_e().cross(s.r_e);
  return out;
}

DqvState dqv_rhs(const DqvState& s, const Vec3& omega_ib_b, const Vec3& f_b,
                 const EarthModel& model) {
  const Vec3 w_ie = model.earth_rate_e();
  const Vec3 g_e = gravitation_e(s.r_e, model);
  const DualQuaternion body(Quaternion::vector(omega_ib_b), Quaternion::vector(f_b));
  const DualQuaternion earth(Quaternion::vector(w_ie), Quaternion::vector(-g_e));
  DqvState rate;
  rate.dq = 0.5 * (s.dq * body - earth * s.dq);
  rate.r_e = (2.0 * (s.dq.dual() * s.dq.real().conjugate())).v() - w_ie.cross(s.r_e);
  return rate;
}

NavStateRate traditional_rhs(const NavState& s, const Vec3& omega_ib_b, const Vec3& f_b,
                             const EarthModel& model) {
  const Vec3 w_ie = model.earth_rate_e();
  const Quaternion& q = s.q_eb;
  NavStateRate d;
  d.q_dot = 0.5 * (q * Quaternion::vector(omega_ib_b) - Quaternion::vector(w_ie) * q);
  const Vec3 f_e = (q * Quaternion::vector(f_b) * q.conjugate()).v();
  d.v_dot = f_e - 2.0 * w_ie.cross(s.v_e) + local_gravity_e(s.r_e, model);
  d.r_dot = s.v_e;
  return d;
}

NavState normalize_attitude(const NavState& s) { return {s.q_eb.normalized(), s.v_e, s.r_e}; }

long rk4_step_count(double t0, double t1, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorKind::InvalidStep, "step must be > 0");
  const double span = t1 - t0;
  if (!(span >= 0.0)) throw Error(ErrorKind::InvalidStep, "t1 must not precede t0");
  const long n = std::lround(span / step);
  if (std::abs(double(n) * step - span) > 1e-9 * std::max(1.0, std::abs(span))) {
    throw Error(ErrorKind::InvalidStep, "step does not divide the interval");
  }
  return n;
}

}  // namespace triq
