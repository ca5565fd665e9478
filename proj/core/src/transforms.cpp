#include "s3radon/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace s3radon {

TransformRules TransformRules::make(int circle_nodes, int sphere_degree, int torus_nodes) {
  TransformRules r;
  r.circle = build_circle_rule(circle_nodes);
  r.sphere = build_sphere2_rule(sphere_degree);
  r.torus = build_torus_rule(torus_nodes, torus_nodes);
  r.small_sphere = r.sphere;
  return r;
}

double radon(const OdfEvaluator& f, const GreatCircle& c, const TransformRules& rules) {
  return mean_over(c, f.f, rules.circle);
}

double xray(const OdfEvaluator& f, const Dir3& h, const Dir3& r, const TransformRules& rules) {
  const double a = radon(f, fibre_circle(h, r), rules);
  const double b = radon(f, fibre_circle(-h, r), rules);
  return 0.5 * (a + b);
}

double generalized_radon(const OdfEvaluator& f, const GreatCircle& c, double rho,
                         const TransformRules& rules) {
  if (rho < -1e-12 || rho > kPi + 1e-12)
    throw std::invalid_argument("generalized_radon: rho must lie in [0, pi]");
  const TorusSpec torus = make_torus(c, 0.5 * std::clamp(rho, 0.0, kPi));
  return mean_over(torus, f.f, rules.torus);
}

double translate_sphere_fn(const std::function<double(const Dir3&)>& F, const Dir3& r, double rho,
                           const TransformRules& rules) {
  if (rho < -1e-12 || rho > kPi + 1e-12)
    throw std::invalid_argument("translate_sphere_fn: rho must lie in [0, pi]");
  return mean_over(SmallCircle{r, std::clamp(rho, 0.0, kPi)}, F, rules.circle);
}

double angle_density(const OdfEvaluator& f, const Dir3& h, const Dir3& r, double rho,
                     const TransformRules& rules) {
  return translate_sphere_fn(
      [&](const Dir3& rp) { return radon(f, fibre_circle(h, rp), rules); }, r, rho, rules);
}

double w_transform(const OdfEvaluator& f, const Dir3& h, const Dir3& r, double rho,
                   const TransformRules& rules) {
  return 0.5 * (angle_density(f, h, r, rho, rules) + angle_density(f, -h, r, rho, rules));
}

double dual_radon(const CircleFunction& phi, const Quat& q, const TransformRules& rules) {
  if (!is_unit(q)) throw std::invalid_argument("dual_radon: q must be unit");
  return mean_over_sphere2([&](const Dir3& h) { return phi(h, rotate3(q, h)); }, rules.sphere);
}

double generalized_dual_radon(const CircleFunction& phi, const Quat& q, double rho,
                              const TransformRules& rules) {
  if (rho < 0.0 || rho >= 0.5 * kPi)
    throw std::invalid_argument("generalized_dual_radon: rho must lie in [0, pi/2)");
  if (rho < 1e-12) return dual_radon(phi, q, rules);
  return mean_over_sphere2(
      [&](const Dir3& h) {
        const Dir3 qh = rotate3(q, h);
        return mean_over(SmallCircle{qh, 2.0 * rho},
                         [&](const Dir3& r) { return phi(h, r); }, rules.circle);
      },
      rules.sphere);
}

double translate_s3(const OdfEvaluator& f, const Quat& q, double rho,
                    const TransformRules& rules) {
  if (rho < -1e-12 || rho > kPi + 1e-12)
    throw std::invalid_argument("translate_s3: rho must lie in [0, pi]");
  return mean_over_small_sphere3(q, std::clamp(rho, 0.0, kPi), f.f, rules.small_sphere);
}

GreatCircle circle_at_distance(const Quat& q, double rho) {
  // Any fibre circle whose witness pair satisfies q h q* . r = cos(2 rho) is
  // rho-incident with q; pick the in-plane point of c(q h q*; 2 rho)
  // deterministically.
  const Dir3 h = any_orthogonal(normalized(Dir3{q.x + 0.218, q.y - 0.547, q.z + 0.831}));
  const Dir3 qh = rotate3(q, h);
  const Dir3 r = in_plane_circle_point(qh, any_orthogonal(qh), 2.0 * rho);
  return fibre_circle(h, r);
}

double translated_fibre_average(const OdfEvaluator& f, const Quat& q, double rho,
                                const TransformRules& rules) {
  if (rho < 0.0 || rho >= 0.5 * kPi)
    throw std::invalid_argument("translated_fibre_average: rho must lie in [0, pi/2)");
  const GreatCircle c0 = circle_at_distance(q, rho);
  double acc = 0.0;
  for (double t : rules.circle.angles) {
    const Quat p = circle_point(c0, t);
    double u = dot(q, p);
    if (u > 1.0) u = 1.0;
    if (u < -1.0) u = -1.0;
    acc += translate_s3(f, q, std::acos(u), rules);
  }
  return acc * rules.circle.weight;
}

double abel_reconstruct(const OdfEvaluator& f, const Quat& q, int grid,
                        const TransformRules& rules) {
  if (grid < 64) throw std::invalid_argument("abel_reconstruct: need at least 64 theta nodes");
  if (!f.even)
    throw std::invalid_argument("abel_reconstruct: f must be declared even");

  // M(theta) = mean over h of the angle density A f(h, q h q*; theta).
  const int n = grid + (grid % 2);  // Simpson needs an even panel count
  const double hstep = kPi / n;
  std::vector<double> m(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double theta = hstep * k;
    m[k] = mean_over_sphere2(
        [&](const Dir3& h) { return angle_density(f, h, rotate3(q, h), theta, rules); },
        rules.sphere);
  }

  // dM/dtheta by fourth-order central differences, with matching-order
  // one-sided stencils at and next to the boundary.
  std::vector<double> dm(n + 1);
  dm[0] = (-25.0 * m[0] + 48.0 * m[1] - 36.0 * m[2] + 16.0 * m[3] - 3.0 * m[4]) / (12.0 * hstep);
  dm[1] = (-3.0 * m[0] - 10.0 * m[1] + 18.0 * m[2] - 6.0 * m[3] + m[4]) / (12.0 * hstep);
  dm[n] = (25.0 * m[n] - 48.0 * m[n - 1] + 36.0 * m[n - 2] - 16.0 * m[n - 3] + 3.0 * m[n - 4]) /
          (12.0 * hstep);
  dm[n - 1] =
      (3.0 * m[n] + 10.0 * m[n - 1] - 18.0 * m[n - 2] + 6.0 * m[n - 3] - m[n - 4]) / (12.0 * hstep);
  for (int k = 2; k + 2 <= n; ++k)
    dm[k] = (-m[k + 2] + 8.0 * m[k + 1] - 8.0 * m[k - 1] + m[k - 2]) / (12.0 * hstep);

  // Integrand -M'(theta) / sin(theta/2); the theta = 0 limit is -2 M''(0),
  // estimated one-sided.
  std::vector<double> integrand(n + 1);
  integrand[0] = -2.0 *
                 (45.0 * m[0] - 154.0 * m[1] + 214.0 * m[2] - 156.0 * m[3] + 61.0 * m[4] -
                  10.0 * m[5]) /
                 (12.0 * hstep * hstep);
  for (int k = 1; k <= n; ++k) integrand[k] = -dm[k] / std::sin(0.5 * hstep * k);

  // Composite Simpson over the uniform theta grid.
  double integral = integrand[0] + integrand[n];
  for (int k = 1; k < n; k += 2) integral += 4.0 * integrand[k];
  for (int k = 2; k < n; k += 2) integral += 2.0 * integrand[k];
  integral *= hstep / 3.0;

  // m[n] is M(pi) = mean_h radon(f)(h, -q h q*); the calibration constant is
  // exactly 1 under the mean-value convention.
  return m[n] + integral;
}

}  // namespace s3radon
