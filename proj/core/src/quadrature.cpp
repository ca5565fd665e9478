#include "s3radon/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace s3radon {

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    // Chebyshev-based initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int l = 2; l <= n; ++l) {
        const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / pp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    nodes[i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
}

CircleRule build_circle_rule(int nodes) {
  if (nodes < 4) throw std::invalid_argument("build_circle_rule: need at least 4 nodes");
  CircleRule rule;
  rule.angles.resize(nodes);
  for (int k = 0; k < nodes; ++k) rule.angles[k] = 2.0 * kPi * k / nodes;
  rule.weight = 1.0 / nodes;
  return rule;
}

Sphere2Rule build_sphere2_rule(int degree) {
  if (degree < 4) throw std::invalid_argument("build_sphere2_rule: need degree >= 4");
  Sphere2Rule rule;
  rule.degree = degree;
  const int npolar = degree / 2 + 1;   // GL exact to polynomial degree 2 npolar - 1 >= degree
  const int nphi = degree + 1;         // equispaced, exact for azimuthal orders <= degree
  std::vector<double> x, w;
  gauss_legendre(npolar, x, w);
  double wsum = 0.0;
  for (double wi : w) wsum += wi;
  rule.nodes.reserve(static_cast<size_t>(npolar) * nphi);
  rule.weights.reserve(static_cast<size_t>(npolar) * nphi);
  for (int i = 0; i < npolar; ++i) {
    const double ct = x[i];
    const double st = std::sqrt(std::max(0.0, 1.0 - ct * ct));
    for (int k = 0; k < nphi; ++k) {
      const double phi = 2.0 * kPi * k / nphi;
      rule.nodes.push_back({st * std::cos(phi), st * std::sin(phi), ct});
      rule.weights.push_back(w[i] / (wsum * nphi));
    }
  }
  return rule;
}

TorusRule build_torus_rule(int nodes_s, int nodes_t) {
  return {build_circle_rule(nodes_s), build_circle_rule(nodes_t)};
}

QuadratureRule build_rule(DomainKind kind, int resolution) {
  QuadratureRule rule;
  rule.kind = kind;
  rule.resolution = resolution;
  switch (kind) {
    case DomainKind::Circle:
      rule.circle = build_circle_rule(resolution);
      break;
    case DomainKind::Sphere2:
    case DomainKind::SmallSphere3:
      rule.sphere = build_sphere2_rule(resolution);
      break;
    case DomainKind::Torus:
      rule.torus = build_torus_rule(resolution, resolution);
      break;
  }
  return rule;
}

double mean_over(const GreatCircle& c, const std::function<double(const Quat&)>& f,
                 const CircleRule& rule) {
  double acc = 0.0;
  for (double t : rule.angles) acc += f(circle_point(c, t));
  return acc * rule.weight;
}

double mean_over(const SmallCircle& c, const std::function<double(const Dir3&)>& f,
                 const CircleRule& rule) {
  if (c.rho < 1e-12) return f(c.center);
  if (c.rho > kPi - 1e-12) return f(-c.center);
  const Dir3 start = small_circle_start(c);
  double acc = 0.0;
  for (double t : rule.angles) acc += f(small_circle_point(c, start, t));
  return acc * rule.weight;
}

double mean_over(const TorusSpec& torus, const std::function<double(const Quat&)>& f,
                 const TorusRule& rule) {
  if (torus.theta < 1e-12) {
    // Degenerate torus is its core circle.
    return mean_over(torus.core, f, rule.s);
  }
  if (torus.theta > 0.5 * kPi - 1e-12) {
    return mean_over(torus.perp, f, rule.t);
  }
  const double ct = std::cos(torus.theta), st = std::sin(torus.theta);
  double acc = 0.0;
  for (double s : rule.s.angles) {
    const Quat base = ct * circle_point(torus.core, s);
    double inner = 0.0;
    for (double t : rule.t.angles) {
      const Quat p = base + st * circle_point(torus.perp, t);
      inner += f(p);
    }
    acc += inner * rule.t.weight;
  }
  return acc * rule.s.weight;
}

double mean_over_sphere2(const std::function<double(const Dir3&)>& f, const Sphere2Rule& rule) {
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

double mean_over_small_sphere3(const Quat& q, double rho,
                               const std::function<double(const Quat&)>& f,
                               const Sphere2Rule& rule) {
  if (rho < 1e-12) return f(q);
  if (rho > kPi - 1e-12) return f(-q);
  const double cr = std::cos(rho), sr = std::sin(rho);
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i) {
    const Dir3& v = rule.nodes[i];
    const Quat p = q * Quat{cr, sr * v.x, sr * v.y, sr * v.z};
    acc += rule.weights[i] * f(p);
  }
  return acc;
}

double mean_over_sphere3(const std::function<double(const Quat&)>& f, int radial_nodes,
                         const Sphere2Rule& rule) {
  if (radial_nodes < 2) throw std::invalid_argument("mean_over_sphere3: need >= 2 radial nodes");
  // Gauss-Chebyshev (second kind) in x = cos rho absorbs the sin^2 rho area
  // factor; the nodes are equispaced in rho and the weights sum to 1 exactly.
  const int n = radial_nodes;
  double acc = 0.0;
  const Quat e0 = quat_e0();
  for (int k = 1; k <= n; ++k) {
    const double rho = kPi * k / (n + 1);
    const double s = std::sin(rho);
    const double w = 2.0 / (n + 1) * s * s;
    acc += w * mean_over_small_sphere3(e0, rho, f, rule);
  }
  return acc;
}

}  // namespace s3radon
