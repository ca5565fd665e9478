#pragma once

#include <cmath>
#include <stdexcept>

namespace s3radon {

inline constexpr double kPi = 3.14159265358979323846;

/// Unit direction on S2. Invariant: |norm() - 1| <= 1e-12 once normalized.
struct Dir3 {
  double x = 0.0, y = 0.0, z = 1.0;

  double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Dir3 operator-(const Dir3& d) { return {-d.x, -d.y, -d.z}; }
inline double dot(const Dir3& a, const Dir3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Dir3 cross(const Dir3& a, const Dir3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline Dir3 normalized(double x, double y, double z) {
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n < 1e-300) throw std::invalid_argument("Dir3: cannot normalize zero vector");
  return {x / n, y / n, z / n};
}
inline Dir3 normalized(const Dir3& d) { return normalized(d.x, d.y, d.z); }

/// Angle between two unit directions, in [0, pi].
inline double angle_between(const Dir3& a, const Dir3& b) {
  double c = dot(a, b);
  if (c > 1.0) c = 1.0;
  if (c < -1.0) c = -1.0;
  return std::acos(c);
}

/// Some unit vector orthogonal to d, chosen deterministically: take the
/// coordinate axis least aligned with d and project it onto d's orthogonal
/// complement.
Dir3 any_orthogonal(const Dir3& d);

/// Quaternion q = w + x e1 + y e2 + z e3.  Rotations are represented by unit
/// quaternions acting as q v q*.
struct Quat {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  Quat() = default;
  Quat(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
  /// Pure quaternion embedding of a direction.
  explicit Quat(const Dir3& d) : w(0.0), x(d.x), y(d.y), z(d.z) {}

  double scalar() const { return w; }
  Dir3 vec_raw() const { return {x, y, z}; }

  Quat conj() const { return {w, -x, -y, -z}; }
  double norm_sq() const { return w * w + x * x + y * y + z * z; }
  double norm() const { return std::sqrt(norm_sq()); }

  /// Rotation angle omega = 2 arccos |Sc q| of the rotation q represents.
  double rotation_angle() const {
    double c = std::fabs(w);
    if (c > 1.0) c = 1.0;
    return 2.0 * std::acos(c);
  }
};

inline Quat operator+(const Quat& a, const Quat& b) {
  return {a.w + b.w, a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Quat operator-(const Quat& a, const Quat& b) {
  return {a.w - b.w, a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Quat operator-(const Quat& a) { return {-a.w, -a.x, -a.y, -a.z}; }
inline Quat operator*(double s, const Quat& q) { return {s * q.w, s * q.x, s * q.y, s * q.z}; }

/// Hamilton product from the generator table e1 e2 = e3 (cyclic), ei^2 = -1.
inline Quat operator*(const Quat& a, const Quat& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline double dot(const Quat& a, const Quat& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

inline Quat normalized(const Quat& q) {
  const double n = q.norm();
  if (n < 1e-300) throw std::invalid_argument("Quat: cannot normalize zero quaternion");
  return {q.w / n, q.x / n, q.y / n, q.z / n};
}

/// Representative with nonnegative scalar part; S3 double-covers SO(3), so
/// q and -q are the same rotation.  Pure quaternions (Sc = 0) are folded by
/// the sign of the first nonzero vector component.  Raw algebra never re-signs.
inline Quat canonical(const Quat& q) {
  if (q.w != 0.0) return q.w < 0.0 ? -q : q;
  if (q.x != 0.0) return q.x < 0.0 ? -q : q;
  if (q.y != 0.0) return q.y < 0.0 ? -q : q;
  return q.z < 0.0 ? -q : q;
}

inline bool is_unit(const Quat& q, double tol = 1e-9) {
  return std::fabs(q.norm() - 1.0) <= tol;
}

inline Quat quat_e0() { return {1, 0, 0, 0}; }
inline Quat quat_e1() { return {0, 1, 0, 0}; }
inline Quat quat_e2() { return {0, 0, 1, 0}; }
inline Quat quat_e3() { return {0, 0, 0, 1}; }

/// Rotation of a direction: q x q* with x taken as pure quaternion.
Dir3 rotate3(const Quat& q, const Dir3& v);

/// SO(4) action T(x) = q x p*.  rotate4(q, q, .) fixes e0 and restricts to
/// rotate3 on the pure part.
Quat rotate4(const Quat& q, const Quat& p, const Quat& x);

/// Quaternion of the rotation about `axis` by angle t: cos(t/2) + axis sin(t/2).
Quat axis_angle_quat(const Dir3& axis, double t);

}  // namespace s3radon
