// Classical two-sample strapdown update in the e-frame: rotation-vector
// attitude update with the 2/3 coning term, velocity update with rotation
// and two-sample sculling compensation, trapezoidal position.
#pragma once

#include <span>
#include <vector>

#include "triq/earth.hpp"
#include "triq/imu.hpp"
#include "triq/kinematics.hpp"

namespace triq {

struct TwoSampleStep {
  Vec3 dtheta1 = Vec3::Zero();
  Vec3 dtheta2 = Vec3::Zero();
  Vec3 dv1 = Vec3::Zero();
  Vec3 dv2 = Vec3::Zero();
  double duration = 0.0;  // 2h [s]
};

/// phi = dth1 + dth2 + 2/3 dth1 x dth2.
Vec3 coning_rotation_vector(const TwoSampleStep& step);

/// Body update by exp(phi/2) on the right, earth rotation over the step on
/// the left. Throws NonUnitQuaternion.
Quaternion two_sample_attitude(const Quaternion& q_eb, const TwoSampleStep& step,
                               const EarthModel& model);

/// Velocity and position update using the attitude at the start of the step.
/// The returned attitude is unchanged.
NavState two_sample_velocity_position(const NavState& s, const TwoSampleStep& step,
                                      const EarthModel& model);

/// Full step: velocity/position first, then attitude.
NavState two_sample_update(const NavState& s, const TwoSampleStep& step, const EarthModel& model);

struct TimedState {
  double t = 0.0;
  NavState state;
};

/// Runs the two-sample algorithm over increment samples (pairs of
/// consecutive samples per step). The first entry is s0 at t0.
std::vector<TimedState> two_sample_trajectory(std::span<const ImuSample> samples,
                                              const NavState& s0, const EarthModel& model,
                                              double t0 = 0.0);

}  // namespace triq
