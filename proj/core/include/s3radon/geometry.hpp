#pragma once

#include "s3radon/quat.hpp"

namespace s3radon {

/// Great circle C(q1, q2) c S3 spanned by an orthonormal pair, q(t) = q1 cos t
/// + q2 sin t.  Every great circle of S3 is the fibre of rotations mapping a
/// witness direction h onto r: q h q* = r for all q on the circle, and the
/// circle covers the fibre twice.  (h, r) and (-h, -r) describe the same
/// circle.
struct GreatCircle {
  Quat q1, q2;
  Dir3 h, r;
};

/// The fibre circle C_{h,r} of all rotations mapping h onto r.  For r != -h
/// the spanning pair is q1 = (1 - r h)/|1 - r h|, q2 = (h + r)/|h + r| with
/// quaternion products of pure quaternions.  The antipodal case r = -h (and
/// near-antipodal |h + r| < 1e-8, where the generic formula cancels
/// catastrophically) uses q1 = u, q2 = u x h for a deterministic pure unit
/// u orthogonal to h; conjugation by any such u sends h to -h.
GreatCircle fibre_circle(const Dir3& h, const Dir3& r);

/// Rebuild the witness pair from an orthonormal spanning pair: h is the (pure)
/// vector part of q1* q2 and r = q1 h q1*.  Throws if Sc(q1* q2) is not ~0.
GreatCircle great_circle_from_span(const Quat& q1, const Quat& q2);

/// The orthogonal circle C^perp, representing all rotations mapping -h onto r.
GreatCircle orthogonal_circle(const GreatCircle& c);

/// q(t) = q1 cos t + q2 sin t.
Quat circle_point(const GreatCircle& c, double t);

/// Spherical torus T(C; theta): points at distance theta in [0, pi/2] from the
/// core circle.  The orthogonal circle is cached for the parametrization.
struct TorusSpec {
  GreatCircle core;
  GreatCircle perp;
  double theta = 0.0;
};

TorusSpec make_torus(const GreatCircle& core, double theta);

/// q(s,t) = core(s) cos(theta) + core_perp(t) sin(theta).
Quat torus_point(const TorusSpec& torus, double s, double t);

/// Small circle (cone) c(center; rho) = { p in S2 : center . p = cos rho }.
struct SmallCircle {
  Dir3 center;
  double rho = 0.0;
};

/// Deterministic point on c(center; rho).
Dir3 small_circle_start(const SmallCircle& c);

/// The point of c(center; rho) in the plane spanned by center and `toward`,
/// at signed angle rho from center (positive = rotated toward `toward`).
/// This realizes the base points r0' (rho toward h) and h0' (rho away from r,
/// i.e. negative sign) used by the conjugation identity.
Dir3 in_plane_circle_point(const Dir3& center, const Dir3& toward, double rho);

/// Walk along the small circle: start rotated about the center by angle t,
/// in the explicit parametrized form r0' cos t + (r x r0') sin t
/// + (r . r0') r (1 - cos t).  `start` must lie on the circle.
Dir3 small_circle_point(const SmallCircle& c, const Dir3& start, double t);

/// rho-incidence distance d(q, C) = 1/2 arccos(q h q* . r), in [0, pi/2].
/// Coincides with the minimum geodesic distance from q to the circle.
double dist_point_circle(const Quat& q, const GreatCircle& c);

/// Distance of the point c(t) from another fibre circle c1, by the closed
/// form of spherical trigonometry: the cosine of 2 d is
/// (h.h1)(r.r1) + a cos(2t) + b sin(2t) with a, b fixed by the witnesses.
double dist_along_fibre(const GreatCircle& c, double t, const GreatCircle& c1);

}  // namespace s3radon
