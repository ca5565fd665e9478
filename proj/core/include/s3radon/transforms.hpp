#pragma once

#include <functional>

#include "s3radon/quadrature.hpp"

namespace s3radon {

/// Function on S3 (an ODF or test integrand).  `even` declares f(q) = f(-q);
/// only even functions are orientation densities, and the Radon transform
/// annihilates the odd part.
struct OdfEvaluator {
  std::function<double(const Quat&)> f;
  bool even = true;

  double operator()(const Quat& q) const { return f(q); }
};

/// Function on the space of great circles, addressed by a witness pair (h, r);
/// antipodally symmetric: phi(h, r) = phi(-h, -r).
struct CircleFunction {
  std::function<double(const Dir3&, const Dir3&)> phi;

  double operator()(const Dir3& h, const Dir3& r) const { return phi(h, r); }
};

/// Prebuilt quadrature rules for the transform family.  All transforms take
/// an explicit bundle so tests can drive resolution; defaults are circle 256,
/// sphere degree 64, torus 128 x 128.
struct TransformRules {
  CircleRule circle;        // great-circle and small-circle means
  Sphere2Rule sphere;       // S2 means (dual transforms, Abel inversion)
  TorusRule torus;          // generalized Radon transform
  Sphere2Rule small_sphere; // S3 translation spheres

  static TransformRules make(int circle_nodes = 256, int sphere_degree = 64,
                             int torus_nodes = 128);
};

/// Spherical (totally geodesic) Radon transform: mean of f over the circle.
double radon(const OdfEvaluator& f, const GreatCircle& c, const TransformRules& rules);

/// Crystallographic X-ray transform: mean of the Radon transform over the
/// fibres of (h, r) and (-h, r); invariant under h -> -h and r -> -r.
double xray(const OdfEvaluator& f, const Dir3& h, const Dir3& r, const TransformRules& rules);

/// Generalized Radon transform: mean of f over the torus T(C; rho/2),
/// rho in [0, pi].  rho = 0 reduces to radon, rho = pi to the orthogonal circle.
double generalized_radon(const OdfEvaluator& f, const GreatCircle& c, double rho,
                         const TransformRules& rules);

/// Spherical translation on S2: mean of F over the small circle c(r; rho).
double translate_sphere_fn(const std::function<double(const Dir3&)>& F, const Dir3& r, double rho,
                           const TransformRules& rules);

/// Angle density A f(h, r; rho): the Radon transform translated over
/// c(r; rho) in its second argument.  A f(.; 0) = radon, A f(.; pi) = radon
/// at (h, -r); equals the generalized Radon transform at torus angle rho/2.
double angle_density(const OdfEvaluator& f, const Dir3& h, const Dir3& r, double rho,
                     const TransformRules& rules);

/// W transform, the Friedel-symmetrized angle density
/// 1/2 [A f(h, r; rho) + A f(-h, r; rho)]; what a diffraction experiment with
/// the specimen spinning about r measures.  W(.; 0) = xray.
double w_transform(const OdfEvaluator& f, const Dir3& h, const Dir3& r, double rho,
                   const TransformRules& rules);

/// Dual Radon transform: mean of phi over all circles through q, realized as
/// the S2 mean of phi(h, q h q*).
double dual_radon(const CircleFunction& phi, const Quat& q, const TransformRules& rules);

/// Generalized dual Radon transform: mean of phi over all circles at
/// incidence distance rho in [0, pi/2) from q; the sampled circles have
/// witnesses r on the small circle c(q h q*; 2 rho).
double generalized_dual_radon(const CircleFunction& phi, const Quat& q, double rho,
                              const TransformRules& rules);

/// Spherical translation on S3: mean of f over the small sphere
/// { p : Sc(q* p) = cos rho }, rho in [0, pi].  rho = 0 gives f(q).
double translate_s3(const OdfEvaluator& f, const Quat& q, double rho,
                    const TransformRules& rules);

/// Right-hand side of the dual-transform factorization: the mean over a fixed
/// great circle c0 with d(q, c0) = rho of the S3 translation of f to the
/// pointwise distance, Int_{c0} (T^{d(q,p)} f)(q) dm(p).  Agrees with
/// generalized_dual_radon applied to radon(f).
double translated_fibre_average(const OdfEvaluator& f, const Quat& q, double rho,
                                const TransformRules& rules);

/// A deterministic circle at incidence distance rho from q (used by the
/// factorization above and exposed for tests).
GreatCircle circle_at_distance(const Quat& q, double rho);

/// Abel-equation inversion of the transform chain: reconstructs f(q) from
/// quadrature evaluations of the angle density as
///   f(q) = mean_h radon(f)(h, -q h q*)
///          + 2 Int_0^pi d/d(cos th) [mean_h A f(h, q h q*; th)] cos(th/2) dth,
/// with the theta derivative by central finite differences on a uniform grid
/// (one-sided at the ends) and the constant calibrated so f == 1 is exact.
double abel_reconstruct(const OdfEvaluator& f, const Quat& q, int grid,
                        const TransformRules& rules);

}  // namespace s3radon
