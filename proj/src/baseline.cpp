#include "triq/baseline.hpp"

namespace triq {

Vec3 coning_rotation_vector(const TwoSampleStep& step) {
  return step.dtheta1 + step.dtheta2 + (2.0 / 3.0) * step.dtheta1.cross(step.dtheta2);
}

Quaternion two_sample_attitude(const Quaternion& q_eb, const TwoSampleStep& step,
                               const EarthModel& model) {
  if (!q_eb.is_unit()) throw Error(ErrorKind::NonUnitQuaternion, "two_sample_attitude");
  const Quaternion body = Quaternion::from_rotation_vector(coning_rotation_vector(step));
  const Quaternion earth =
      Quaternion::from_rotation_vector(-model.earth_rate_e() * step.duration);
  return (earth * q_eb * body).normalized();
}

NavState two_sample_velocity_position(const NavState& s, const TwoSampleStep& step,
                                      const EarthModel& model) {
  const Vec3 dth = step.dtheta1 + step.dtheta2;
  const Vec3 dv = step.dv1 + step.dv2;
  const Vec3 rotation = 0.5 * dth.cross(dv);
  const Vec3 sculling = (2.0 / 3.0) * (step.dtheta1.cross(step.dv2) + step.dv1.cross(step.dtheta2));
  const Mat3 c_be = s.q_eb.rotation_matrix();
  const Vec3 w_ie = model.earth_rate_e();
  const double dt = step.duration;

  // Specific force increment in e, with the e-frame rotation over the step.
  const Vec3 dv_sf = c_be * (dv + rotation + sculling) - 0.5 * dt * w_ie.cross(c_be * dv);
  const Vec3 dv_gc = (local_gravity_e(s.r_e, model) - 2.0 * w_ie.cross(s.v_e)) * dt;

  NavState out = s;
  out.v_e = s.v_e + dv_sf + dv_gc;
  out.r_e = s.r_e + 0.5 * dt * (s.v_e + out.v_e);
  return out;
}

NavState two_sample_update(const NavState& s, const TwoSampleStep& step, const EarthModel& model) {
  NavState out = two_sample_velocity_position(s, step, model);
  out.q_eb = two_sample_attitude(s.q_eb, step, model);
  return out;
}

std::vector<TimedState> two_sample_trajectory(std::span<const ImuSample> samples,
                                              const NavState& s0, const EarthModel& model,
                                              double t0) {
  std::vector<TimedState> out;
  out.reserve(samples.size() / 2 + 1);
  out.push_back({t0, s0});
  NavState state = s0;
  double t_prev = t0;
  for (std::size_t k = 0; k + 1 < samples.size(); k += 2) {
    TwoSampleStep step{samples[k].gyro, samples[k + 1].gyro, samples[k].accel,
                       samples[k + 1].accel, samples[k + 1].t - t_prev};
    state = two_sample_update(state, step, model);
    t_prev = samples[k + 1].t;
    out.push_back({t_prev, state});
  }
  return out;
}

}  // namespace triq
