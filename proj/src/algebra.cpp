#include "triq/algebra.hpp"

#include <algorithm>
#include <ostream>

#include "triq/error.hpp"

namespace triq {

Quaternion Quaternion::from_axis_angle(const Vec3& axis, double angle) {
  return {std::cos(0.5 * angle), std::sin(0.5 * angle) * axis.normalized()};
}

Quaternion Quaternion::from_rotation_vector(const Vec3& phi) {
  const double angle = phi.norm();
  if (angle < 1e-8) {
    // Series form keeps full precision for tiny increments.
    const double a2 = angle * angle;
    return {1.0 - a2 / 8.0 + a2 * a2 / 384.0, (0.5 - a2 / 48.0) * phi};
  }
  return {std::cos(0.5 * angle), (std::sin(0.5 * angle) / angle) * phi};
}

Quaternion Quaternion::from_rotation_matrix(const Mat3& R) {
  // Shepperd's method: pick the largest of the four squared components.
  const double tr = R.trace();
  const double d0 = R(0, 0), d1 = R(1, 1), d2 = R(2, 2);
  double s, x, y, z;
  if (tr >= d0 && tr >= d1 && tr >= d2) {
    s = 0.5 * std::sqrt(1.0 + tr);
    const double k = 0.25 / s;
    x = (R(2, 1) - R(1, 2)) * k;
    y = (R(0, 2) - R(2, 0)) * k;
    z = (R(1, 0) - R(0, 1)) * k;
  } else if (d0 >= d1 && d0 >= d2) {
    x = 0.5 * std::sqrt(1.0 + d0 - d1 - d2);
    const double k = 0.25 / x;
    s = (R(2, 1) - R(1, 2)) * k;
    y = (R(0, 1) + R(1, 0)) * k;
    z = (R(0, 2) + R(2, 0)) * k;
  } else if (d1 >= d2) {
    y = 0.5 * std::sqrt(1.0 - d0 + d1 - d2);
    const double k = 0.25 / y;
    s = (R(0, 2) - R(2, 0)) * k;
    x = (R(0, 1) + R(1, 0)) * k;
    z = (R(1, 2) + R(2, 1)) * k;
  } else {
    z = 0.5 * std::sqrt(1.0 - d0 - d1 + d2);
    const double k = 0.25 / z;
    s = (R(1, 0) - R(0, 1)) * k;
    x = (R(0, 2) + R(2, 0)) * k;
    y = (R(1, 2) + R(2, 1)) * k;
  }
  if (s < 0.0) return Quaternion(-s, -x, -y, -z).normalized();
  return Quaternion(s, x, y, z).normalized();
}

Quaternion Quaternion::normalized() const {
  const double n = norm();
  return {s_ / n, v_ / n};
}

Mat3 Quaternion::rotation_matrix() const {
  const double w = s_, x = v_.x(), y = v_.y(), z = v_.z();
  Mat3 R;
  R << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z), 2 * (x * z + w * y),
      2 * (x * y + w * z), 1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
      2 * (x * z - w * y), 2 * (y * z + w * x), 1 - 2 * (x * x + y * y);
  return R;
}

Vec3 Quaternion::rotation_vector() const {
  const Quaternion q = s_ < 0.0 ? -*this : *this;
  const double vn = q.v_.norm();
  if (vn < 1e-12) return 2.0 * q.v_ / q.s_;
  return (2.0 * std::atan2(vn, q.s_) / vn) * q.v_;
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '[' << q.s() << ", (" << q.v().x() << ", " << q.v().y() << ", " << q.v().z()
            << ")]";
}

Vec3 rotate_frame(const Quaternion& q_on, const Vec3& r_o) {
  if (!q_on.is_unit()) {
    throw Error(ErrorKind::NonUnitQuaternion, "rotate_frame needs a unit quaternion");
  }
  return (q_on.conjugate() * Quaternion::vector(r_o) * q_on).v();
}

bool DualQuaternion::is_unit(double tol) const {
  if (!real_.is_unit(tol)) return false;
  const Quaternion m = dual_ * real_.conjugate();
  return std::abs(m.s()) <= tol * std::max(1.0, m.v().norm());
}

bool TridentQuaternion::is_unit(double tol) const {
  if (!q_.is_unit(tol)) return false;
  const Quaternion qc = q_.conjugate();
  for (const Quaternion* part : {&q1_, &q2_}) {
    const Quaternion m = *part * qc;
    if (std::abs(m.s()) > tol * std::max(1.0, m.v().norm())) return false;
  }
  return true;
}

Eigen::Matrix<double, 12, 1> TridentQuaternion::components() const {
  Eigen::Matrix<double, 12, 1> c;
  int i = 0;
  for (const Quaternion* part : {&q_, &q1_, &q2_}) {
    c(i++) = part->s();
    c(i++) = part->v().x();
    c(i++) = part->v().y();
    c(i++) = part->v().z();
  }
  return c;
}

std::ostream& operator<<(std::ostream& os, const TridentQuaternion& t) {
  return os << t.real() << " + e1 " << t.e1() << " + e2 " << t.e2();
}

}  // namespace triq
