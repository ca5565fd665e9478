#include "s3radon/geometry.hpp"

#include <cmath>
#include <stdexcept>

namespace s3radon {

Dir3 any_orthogonal(const Dir3& d) {
  const double ax = std::fabs(d.x), ay = std::fabs(d.y), az = std::fabs(d.z);
  Dir3 e{1, 0, 0};
  if (ay <= ax && ay <= az) e = {0, 1, 0};
  else if (az <= ax && az <= ay) e = {0, 0, 1};
  const double c = dot(e, d);
  return normalized(e.x - c * d.x, e.y - c * d.y, e.z - c * d.z);
}

Dir3 rotate3(const Quat& q, const Dir3& v) {
  if (!is_unit(q)) throw std::invalid_argument("rotate3: quaternion is not unit norm");
  // q v q* expanded: (w^2 - |u|^2) v + 2 (u.v) u + 2 w (u x v), u = Vec q.
  const double w = q.w;
  const Dir3 u{q.x, q.y, q.z};
  const double uu = dot(u, u);
  const double uv = dot(u, v);
  const Dir3 c = cross(u, v);
  return {(w * w - uu) * v.x + 2.0 * uv * u.x + 2.0 * w * c.x,
          (w * w - uu) * v.y + 2.0 * uv * u.y + 2.0 * w * c.y,
          (w * w - uu) * v.z + 2.0 * uv * u.z + 2.0 * w * c.z};
}

Quat rotate4(const Quat& q, const Quat& p, const Quat& x) {
  if (!is_unit(q) || !is_unit(p))
    throw std::invalid_argument("rotate4: rotation quaternions must be unit norm");
  return q * x * p.conj();
}

Quat axis_angle_quat(const Dir3& axis, double t) {
  const double c = std::cos(0.5 * t), s = std::sin(0.5 * t);
  return {c, s * axis.x, s * axis.y, s * axis.z};
}

GreatCircle fibre_circle(const Dir3& h, const Dir3& r) {
  const double nx = h.x + r.x, ny = h.y + r.y, nz = h.z + r.z;
  if (std::sqrt(nx * nx + ny * ny + nz * nz) < 1e-8) {
    // Antipodal branch r = -h: the circle of pure quaternions orthogonal to h.
    const Dir3 u = any_orthogonal(h);
    const Dir3 uxh = cross(u, h);
    return {Quat(u), Quat(uxh), h, r};
  }
  const Quat rh = Quat(r) * Quat(h);
  const Quat q1 = normalized(quat_e0() - rh);
  const Quat q2 = normalized(Quat(Dir3{nx, ny, nz}));
  return {q1, q2, h, r};
}

GreatCircle great_circle_from_span(const Quat& q1, const Quat& q2) {
  const Quat p = q1.conj() * q2;
  if (std::fabs(p.w) > 1e-9)
    throw std::invalid_argument("great_circle_from_span: spanning pair is not orthogonal");
  const Dir3 h = normalized(p.vec_raw());
  const Dir3 r = rotate3(q1, h);
  return {normalized(q1), normalized(q2), h, r};
}

GreatCircle orthogonal_circle(const GreatCircle& c) { return fibre_circle(-c.h, c.r); }

Quat circle_point(const GreatCircle& c, double t) {
  const double ct = std::cos(t), st = std::sin(t);
  return ct * c.q1 + st * c.q2;
}

TorusSpec make_torus(const GreatCircle& core, double theta) {
  if (theta < 0.0 || theta > 0.5 * kPi + 1e-12)
    throw std::invalid_argument("make_torus: theta must lie in [0, pi/2]");
  return {core, orthogonal_circle(core), theta};
}

Quat torus_point(const TorusSpec& torus, double s, double t) {
  const double c = std::cos(torus.theta), sn = std::sin(torus.theta);
  return c * circle_point(torus.core, s) + sn * circle_point(torus.perp, t);
}

Dir3 small_circle_start(const SmallCircle& c) {
  return in_plane_circle_point(c.center, any_orthogonal(c.center), c.rho);
}

Dir3 in_plane_circle_point(const Dir3& center, const Dir3& toward, double rho) {
  const double a = dot(toward, center);
  Dir3 w{toward.x - a * center.x, toward.y - a * center.y, toward.z - a * center.z};
  if (w.norm() < 1e-12) {
    // `toward` is (anti)parallel to the center: the in-plane direction is
    // undetermined, any orthogonal serves.
    w = any_orthogonal(center);
  } else {
    w = normalized(w);
  }
  const double cr = std::cos(rho), sr = std::sin(rho);
  return {cr * center.x + sr * w.x, cr * center.y + sr * w.y, cr * center.z + sr * w.z};
}

Dir3 small_circle_point(const SmallCircle& c, const Dir3& start, double t) {
  if (std::fabs(dot(start, c.center) - std::cos(c.rho)) > 1e-10)
    throw std::invalid_argument("small_circle_point: start point is not on the circle");
  const Dir3& r = c.center;
  const Dir3& r0 = start;
  const double ct = std::cos(t), st = std::sin(t);
  const Dir3 rxr0 = cross(r, r0);
  const double rr0 = dot(r, r0);
  return {r0.x * ct + rxr0.x * st + rr0 * r.x * (1.0 - ct),
          r0.y * ct + rxr0.y * st + rr0 * r.y * (1.0 - ct),
          r0.z * ct + rxr0.z * st + rr0 * r.z * (1.0 - ct)};
}

double dist_point_circle(const Quat& q, const GreatCircle& c) {
  double x = dot(rotate3(q, c.h), c.r);
  if (x > 1.0) x = 1.0;
  if (x < -1.0) x = -1.0;
  return 0.5 * std::acos(x);
}

double dist_along_fibre(const GreatCircle& c, double t, const GreatCircle& c1) {
  const double a = dot(c.h, c1.h);
  const double g = dot(c.r, c1.r);
  const double beta_sq = 1.0 - a * a;
  double x;
  if (beta_sq <= 1e-24) {
    x = (a >= 0.0 ? g : -g);
  } else {
    const double beta = std::sqrt(beta_sq);
    const Dir3 w = normalized(c1.h.x - a * c.h.x, c1.h.y - a * c.h.y, c1.h.z - a * c.h.z);
    const double cw = dot(rotate3(c.q1, w), c1.r);
    const double cx = dot(rotate3(c.q1, cross(c.h, w)), c1.r);
    x = a * g + beta * (cw * std::cos(2.0 * t) + cx * std::sin(2.0 * t));
  }
  if (x > 1.0) x = 1.0;
  if (x < -1.0) x = -1.0;
  return 0.5 * std::acos(x);
}

}  // namespace s3radon
