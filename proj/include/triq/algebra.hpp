// Quaternion, dual quaternion, trident number and trident quaternion value types.
//
// Conventions: Hamilton product, scalar-first storage. A frame rotation q_ON
// maps coordinates r^O to r^N = q_ON* o r^O o q_ON, so q o r o q* takes N
// coordinates back to O.
#pragma once

#include <cmath>
#include <iosfwd>

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace triq {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

/// Precondition tolerance for "unit" checks on user-supplied values.
inline constexpr double kUnitTolerance = 1e-9;

class Quaternion {
 public:
  Quaternion() : s_(0.0), v_(Vec3::Zero()) {}
  Quaternion(double s, const Vec3& v) : s_(s), v_(v) {}
  Quaternion(double s, double x, double y, double z) : s_(s), v_(x, y, z) {}

  static Quaternion identity() { return {1.0, Vec3::Zero()}; }
  static Quaternion zero() { return {}; }
  /// Promotes a 3-vector to the vector quaternion [0, v].
  static Quaternion vector(const Vec3& v) { return {0.0, v}; }
  /// Rotation by `angle` about the unit axis `axis`.
  static Quaternion from_axis_angle(const Vec3& axis, double angle);
  /// Quaternion of the rotation vector phi, i.e. exp(phi / 2).
  static Quaternion from_rotation_vector(const Vec3& phi);
  /// Unit quaternion q with q o r o q* = R r.
  static Quaternion from_rotation_matrix(const Mat3& R);

  double s() const { return s_; }
  const Vec3& v() const { return v_; }

  Quaternion conjugate() const { return {s_, -v_}; }
  double squared_norm() const { return s_ * s_ + v_.squaredNorm(); }
  double norm() const { return std::sqrt(squared_norm()); }
  Quaternion normalized() const;
  bool is_unit(double tol = kUnitTolerance) const { return std::abs(norm() - 1.0) <= tol; }
  bool is_vector() const { return s_ == 0.0; }
  bool is_finite() const { return std::isfinite(s_) && v_.allFinite(); }

  /// Matrix R with q o r o q* = R r (valid for unit q).
  Mat3 rotation_matrix() const;
  /// Rotation vector phi with exp(phi / 2) = q, angle in [0, pi].
  Vec3 rotation_vector() const;

  Quaternion operator-() const { return {-s_, -v_}; }

  friend Quaternion operator+(const Quaternion& a, const Quaternion& b) {
    return {a.s_ + b.s_, a.v_ + b.v_};
  }
  friend Quaternion operator-(const Quaternion& a, const Quaternion& b) {
    return {a.s_ - b.s_, a.v_ - b.v_};
  }
  friend Quaternion operator*(double k, const Quaternion& q) { return {k * q.s_, k * q.v_}; }
  friend Quaternion operator*(const Quaternion& q, double k) { return k * q; }

  /// Hamilton product.
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.s_ * b.s_ - a.v_.dot(b.v_), a.s_ * b.v_ + b.s_ * a.v_ + a.v_.cross(b.v_)};
  }

  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.s_ == b.s_ && a.v_ == b.v_;
  }

 private:
  double s_;
  Vec3 v_;
};

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

/// Coordinates in frame N of the vector whose frame-O coordinates are r_o.
/// Throws Error(NonUnitQuaternion) when q_on is not unit.
Vec3 rotate_frame(const Quaternion& q_on, const Vec3& r_o);

/// q + eps q', eps^2 = 0.
class DualQuaternion {
 public:
  DualQuaternion() = default;
  DualQuaternion(const Quaternion& real, const Quaternion& dual) : real_(real), dual_(dual) {}

  static DualQuaternion identity() { return {Quaternion::identity(), Quaternion::zero()}; }

  const Quaternion& real() const { return real_; }
  const Quaternion& dual() const { return dual_; }

  DualQuaternion conjugate() const { return {real_.conjugate(), dual_.conjugate()}; }
  /// Unit real part and a vector-valued dual o real*.
  bool is_unit(double tol = kUnitTolerance) const;

  friend DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.real_ + b.real_, a.dual_ + b.dual_};
  }
  friend DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.real_ - b.real_, a.dual_ - b.dual_};
  }
  friend DualQuaternion operator*(double k, const DualQuaternion& d) {
    return {k * d.real_, k * d.dual_};
  }
  friend DualQuaternion operator*(const DualQuaternion& d, double k) { return k * d; }
  friend DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) {
    return {a.real_ * b.real_, a.real_ * b.dual_ + a.dual_ * b.real_};
  }

 private:
  Quaternion real_;
  Quaternion dual_;
};

/// a0 + e1 a1 + e2 a2 with e1^2 = e2^2 = e1 e2 = 0.
class TridentNumber {
 public:
  TridentNumber() = default;
  TridentNumber(double a0, double a1, double a2) : a0_(a0), a1_(a1), a2_(a2) {}

  double a0() const { return a0_; }
  double a1() const { return a1_; }
  double a2() const { return a2_; }
  bool is_finite() const {
    return std::isfinite(a0_) && std::isfinite(a1_) && std::isfinite(a2_);
  }

  friend TridentNumber operator+(const TridentNumber& a, const TridentNumber& b) {
    return {a.a0_ + b.a0_, a.a1_ + b.a1_, a.a2_ + b.a2_};
  }
  friend TridentNumber operator-(const TridentNumber& a, const TridentNumber& b) {
    return {a.a0_ - b.a0_, a.a1_ - b.a1_, a.a2_ - b.a2_};
  }
  friend TridentNumber operator*(double k, const TridentNumber& a) {
    return {k * a.a0_, k * a.a1_, k * a.a2_};
  }
  friend TridentNumber operator*(const TridentNumber& a, double k) { return k * a; }
  friend TridentNumber operator*(const TridentNumber& a, const TridentNumber& b) {
    return {a.a0_ * b.a0_, a.a0_ * b.a1_ + a.a1_ * b.a0_, a.a0_ * b.a2_ + a.a2_ * b.a0_};
  }
  friend bool operator==(const TridentNumber&, const TridentNumber&) = default;

 private:
  double a0_ = 0.0;
  double a1_ = 0.0;
  double a2_ = 0.0;
};

/// q + e1 q' + e2 q''. For navigation states the e1 part carries the
/// total velocity and the e2 part the position.
class TridentQuaternion {
 public:
  TridentQuaternion() = default;
  TridentQuaternion(const Quaternion& q, const Quaternion& q1, const Quaternion& q2)
      : q_(q), q1_(q1), q2_(q2) {}

  static TridentQuaternion identity() { return {Quaternion::identity(), {}, {}}; }
  static TridentQuaternion zero() { return {}; }

  const Quaternion& real() const { return q_; }
  const Quaternion& e1() const { return q1_; }
  const Quaternion& e2() const { return q2_; }

  TridentQuaternion conjugate() const {
    return {q_.conjugate(), q1_.conjugate(), q2_.conjugate()};
  }
  bool is_finite() const { return q_.is_finite() && q1_.is_finite() && q2_.is_finite(); }
  /// Unit real part, and q' o q*, q'' o q* vector quaternions. The scalar
  /// residues are compared against tol scaled by the size of their vector
  /// parts so that position-sized values are judged in relative terms.
  bool is_unit(double tol = kUnitTolerance) const;
  /// The 12 scalar components in the order real, e1, e2 (s, x, y, z each).
  Eigen::Matrix<double, 12, 1> components() const;

  TridentQuaternion operator-() const { return {-q_, -q1_, -q2_}; }

  friend TridentQuaternion operator+(const TridentQuaternion& a, const TridentQuaternion& b) {
    return {a.q_ + b.q_, a.q1_ + b.q1_, a.q2_ + b.q2_};
  }
  friend TridentQuaternion operator-(const TridentQuaternion& a, const TridentQuaternion& b) {
    return {a.q_ - b.q_, a.q1_ - b.q1_, a.q2_ - b.q2_};
  }
  friend TridentQuaternion operator*(double k, const TridentQuaternion& t) {
    return {k * t.q_, k * t.q1_, k * t.q2_};
  }
  friend TridentQuaternion operator*(const TridentQuaternion& t, double k) { return k * t; }
  friend TridentQuaternion operator*(const TridentQuaternion& a, const TridentQuaternion& b) {
    return {a.q_ * b.q_, a.q_ * b.q1_ + a.q1_ * b.q_, a.q_ * b.q2_ + a.q2_ * b.q_};
  }
  friend bool operator==(const TridentQuaternion& a, const TridentQuaternion& b) {
    return a.q_ == b.q_ && a.q1_ == b.q1_ && a.q2_ == b.q2_;
  }

 private:
  Quaternion q_;
  Quaternion q1_;
  Quaternion q2_;
};

std::ostream& operator<<(std::ostream& os, const TridentQuaternion& t);

/// Vector quaternion of v1 x v2 computed as (v1 o v2 - v2 o v1) / 2.
inline Quaternion commutator_half(const Quaternion& a, const Quaternion& b) {
  return 0.5 * (a * b - b * a);
}

inline Mat3 skew(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(), v.z(), 0.0, -v.x(), -v.y(), v.x(), 0.0;
  return m;
}

}  // namespace triq
