#pragma once

#include <functional>
#include <vector>

#include "s3radon/geometry.hpp"

namespace s3radon {

/// All rules use the mean-value (probabilistic) convention: weights sum to 1,
/// so the mean of f == 1 over any domain is exactly 1.

enum class DomainKind { Circle, Sphere2, Torus, SmallSphere3 };

/// Uniform rule on a circle parameter: N equispaced nodes t_k = 2 pi k / N
/// with weights 1/N.  Spectrally accurate for smooth periodic integrands and
/// exact for trigonometric polynomials of degree < N.
struct CircleRule {
  std::vector<double> angles;
  double weight = 0.0;
};

/// Gauss-Legendre polar times equispaced azimuth product rule on S2, exact for
/// spherical harmonics up to `degree`.
struct Sphere2Rule {
  std::vector<Dir3> nodes;
  std::vector<double> weights;  // sum to 1
  int degree = 0;
};

/// Product of two circle rules over the torus parameters (s, t); the surface
/// measure of the parametrized torus is the uniform product measure.
struct TorusRule {
  CircleRule s;
  CircleRule t;
};

/// Generic rule wrapper keeping the per-domain data together with its kind
/// and resolution metadata.
struct QuadratureRule {
  DomainKind kind = DomainKind::Circle;
  int resolution = 0;
  CircleRule circle;       // Circle
  Sphere2Rule sphere;      // Sphere2, SmallSphere3
  TorusRule torus;         // Torus
};

CircleRule build_circle_rule(int nodes);
Sphere2Rule build_sphere2_rule(int degree);
TorusRule build_torus_rule(int nodes_s, int nodes_t);

/// resolution: circle/torus = node count (>= 4), sphere2/small_sphere3 =
/// exactness degree (>= 4).
QuadratureRule build_rule(DomainKind kind, int resolution);

/// Gauss-Legendre nodes/weights on [-1, 1] (weights sum to 2).
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

double mean_over(const GreatCircle& c, const std::function<double(const Quat&)>& f,
                 const CircleRule& rule);
double mean_over(const SmallCircle& c, const std::function<double(const Dir3&)>& f,
                 const CircleRule& rule);
double mean_over(const TorusSpec& torus, const std::function<double(const Quat&)>& f,
                 const TorusRule& rule);
double mean_over_sphere2(const std::function<double(const Dir3&)>& f, const Sphere2Rule& rule);
/// Mean over the small sphere { p : Sc(q* p) = cos rho } c S3, realized as the
/// sphere2 rule mapped through p = q (cos rho + sin rho v).
double mean_over_small_sphere3(const Quat& q, double rho,
                               const std::function<double(const Quat&)>& f,
                               const Sphere2Rule& rule);

/// Mean over all of S3: radial Gauss-Chebyshev (weight sin^2 rho, nodes
/// equispaced in rho) composed with small-sphere means.  Exact for polynomials
/// of degree <= 2 radial_nodes - 1 when the sphere rule degree suffices.
double mean_over_sphere3(const std::function<double(const Quat&)>& f, int radial_nodes,
                         const Sphere2Rule& rule);

}  // namespace s3radon
