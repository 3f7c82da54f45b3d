#pragma once

#include <random>

#include "triq/algebra.hpp"
#include "triq/earth.hpp"
#include "triq/kinematics.hpp"

namespace triq::test {

inline Vec3 random_vec(std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> n;
  return scale * Vec3(n(rng), n(rng), n(rng));
}

inline Quaternion random_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return {n(rng), n(rng), n(rng), n(rng)};
}

inline Quaternion random_unit(std::mt19937_64& rng) { return random_quat(rng).normalized(); }

inline TridentQuaternion random_trident(std::mt19937_64& rng) {
  return {random_quat(rng), random_quat(rng), random_quat(rng)};
}

/// Unit trident quaternion q + e1 a o q / 2 + e2 b o q / 2 with vector a, b.
inline TridentQuaternion random_unit_trident(std::mt19937_64& rng, double scale = 1.0) {
  const Quaternion q = random_unit(rng);
  return {q, 0.5 * (Quaternion::vector(random_vec(rng, scale)) * q),
          0.5 * (Quaternion::vector(random_vec(rng, scale)) * q)};
}

inline double max_abs_diff(const Quaternion& a, const Quaternion& b) {
  return std::max(std::abs(a.s() - b.s()), (a.v() - b.v()).cwiseAbs().maxCoeff());
}

inline double max_abs_diff(const TridentQuaternion& a, const TridentQuaternion& b) {
  return (a.components() - b.components()).cwiseAbs().maxCoeff();
}

/// Random state near the earth surface.
inline NavState random_state(std::mt19937_64& rng, const EarthModel& m) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  NavState s;
  s.q_eb = random_unit(rng);
  s.v_e = random_vec(rng, 200.0);
  s.r_e = geodetic_to_ecef({1.2 * u(rng), 3.0 * u(rng), 5000.0 * (u(rng) + 1.0)}, m);
  return s;
}

}  // namespace triq::test
