#include "s3radon/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

#include "s3radon/harmonics.hpp"
#include "s3radon/io.hpp"
#include "s3radon/kernels.hpp"
#include "s3radon/reconstruction.hpp"
#include "s3radon/transforms.hpp"

namespace s3radon {

namespace {

double clamp1(double x) { return x > 1.0 ? 1.0 : (x < -1.0 ? -1.0 : x); }

double ipow(double x, int n) {
  double r = 1.0;
  while (n > 0) {
    if (n & 1) r *= x;
    x *= x;
    n >>= 1;
  }
  return r;
}

Dir3 random_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double x, y, z, n;
  do {
    x = g(rng);
    y = g(rng);
    z = g(rng);
    n = std::sqrt(x * x + y * y + z * z);
  } while (n < 1e-12);
  return {x / n, y / n, z / n};
}

Quat random_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  double w, x, y, z, n;
  do {
    w = g(rng);
    x = g(rng);
    y = g(rng);
    z = g(rng);
    n = std::sqrt(w * w + x * x + y * y + z * z);
  } while (n < 1e-12);
  return {w / n, x / n, y / n, z / n};
}

/// Direct mixture evaluator avoiding trig round trips; for integer-kappa dlVP
/// the kernel is norm (q . c)^{2 kappa}.
OdfEvaluator fast_mixture(const RbfMixture& m) {
  struct Term {
    Quat c;
    double weight;
    double norm;
    int ik;        // dlVP integer exponent, or -1
    double kappa;
    KernelKind kind;
  };
  std::vector<Term> terms;
  for (const auto& comp : m.components) {
    Term t;
    t.c = comp.center;
    t.weight = comp.weight;
    t.kappa = comp.spec.kappa;
    t.kind = comp.spec.kind;
    if (comp.spec.kind == KernelKind::DeLaValleePoussin) {
      t.norm = beta_fn(1.5, 0.5) / beta_fn(1.5, comp.spec.kappa + 0.5);
      const double r = std::round(comp.spec.kappa);
      t.ik = std::fabs(comp.spec.kappa - r) < 1e-12 ? static_cast<int>(r) : -1;
    } else {
      t.norm = 0.0;
      t.ik = -1;
    }
    terms.push_back(t);
  }
  return OdfEvaluator{[terms](const Quat& q) {
                        double acc = 0.0;
                        for (const auto& t : terms) {
                          const double x = dot(t.c, q);
                          if (t.kind == KernelKind::DeLaValleePoussin) {
                            const double c2 = x * x;
                            acc += t.weight * t.norm *
                                   (t.ik >= 0 ? ipow(c2, t.ik) : std::pow(c2, t.kappa));
                          } else {
                            const double k = t.kappa;
                            const double num = 1.0 - k * k;
                            const double dm = 1.0 - 2.0 * k * x + k * k;
                            const double dp = 1.0 + 2.0 * k * x + k * k;
                            acc += t.weight * 0.5 * (num / (dm * dm) + num / (dp * dp));
                          }
                        }
                        return acc;
                      },
                      true};
}

RbfMixture two_component_dlvp4(std::mt19937_64& rng) {
  RbfMixture m;
  m.components.push_back({random_quat(rng), 0.6, de_la_vallee_poussin(4)});
  m.components.push_back({random_quat(rng), 0.4, de_la_vallee_poussin(4)});
  return m;
}

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

using Suite = std::vector<CheckResult>;

void add(Suite& suite, int criterion, const std::string& name, double measured, double tol,
         double seconds, std::string detail = {}) {
  suite.push_back({criterion, name, measured, tol, seconds, std::move(detail)});
}

// ---------------------------------------------------------------------------
// rotation_geometry invariants (criterion 7)

void check_geometry(Suite& suite, std::mt19937_64& rng) {
  {
    Timer timer;
    // Conjugation identity: q(t) h'(u) q*(t) = r'(u + 2t) on a 16 x 16 grid.
    double err = 0.0;
    for (int rep = 0; rep < 4; ++rep) {
      const Dir3 h = random_dir(rng);
      const Dir3 r = random_dir(rng);
      const double rho = 0.2 + 0.6 * rep;
      const GreatCircle c = fibre_circle(h, r);
      const Dir3 r0 = in_plane_circle_point(r, h, rho);
      const Dir3 h0 = in_plane_circle_point(h, r, -rho);
      for (int i = 0; i < 16; ++i) {
        for (int j = 0; j < 16; ++j) {
          const double t = 2.0 * kPi * i / 16.0;
          const double u = 2.0 * kPi * j / 16.0;
          const Dir3 hp = rotate3(axis_angle_quat(h, u), h0);
          const Dir3 rp = rotate3(axis_angle_quat(r, u + 2.0 * t), r0);
          const Dir3 lhs = rotate3(circle_point(c, t), hp);
          err = std::max({err, std::fabs(lhs.x - rp.x), std::fabs(lhs.y - rp.y),
                          std::fabs(lhs.z - rp.z)});
        }
      }
    }
    add(suite, 7, "geometry/conjugation-identity", err, 1e-12, timer.seconds());
  }
  {
    Timer timer;
    // Torus factorization: p2* p1 lies at distance rho/2 from C_{h,r}.
    double err = 0.0;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
      const Dir3 h = random_dir(rng);
      const Dir3 r = random_dir(rng);
      const double rho = 0.05 + 3.0 * u01(rng);
      const Dir3 u = random_dir(rng);
      const Dir3 v = in_plane_circle_point(u, random_dir(rng), rho);
      const Quat p1 = circle_point(fibre_circle(h, u), 2.0 * kPi * u01(rng));
      const Quat p2 = circle_point(fibre_circle(r, v), 2.0 * kPi * u01(rng));
      const double d = dist_point_circle(p2.conj() * p1, fibre_circle(h, r));
      err = std::max(err, std::fabs(d - 0.5 * rho));
    }
    add(suite, 7, "geometry/torus-factorization", err, 1e-10, timer.seconds());
  }
  {
    Timer timer;
    // Tangent-circle family: every fibre with r on c(q h q*; rho) is rho/2-incident.
    double err = 0.0;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int rep = 0; rep < 50; ++rep) {
      const Quat q = random_quat(rng);
      const Dir3 h = random_dir(rng);
      const double rho = 0.05 + 2.9 * u01(rng);
      const Dir3 qh = rotate3(q, h);
      const SmallCircle circle{qh, rho};
      const Dir3 r =
          small_circle_point(circle, small_circle_start(circle), 2.0 * kPi * u01(rng));
      err = std::max(err, std::fabs(dist_point_circle(q, fibre_circle(h, r)) - 0.5 * rho));
    }
    add(suite, 7, "geometry/tangent-circle-family", err, 1e-10, timer.seconds());
  }
  {
    Timer timer;
    // Antipodal double cover: q(t + pi) = -q(t).
    double err = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const GreatCircle c = fibre_circle(random_dir(rng), random_dir(rng));
      for (int i = 0; i < 8; ++i) {
        const double t = 2.0 * kPi * i / 8.0 + 0.1;
        const Quat a = circle_point(c, t + kPi);
        const Quat b = -circle_point(c, t);
        err = std::max(err, (a - b).norm());
      }
    }
    add(suite, 7, "geometry/antipodal-double-cover", err, 1e-12, timer.seconds());
  }
  {
    Timer timer;
    // Fibre-fibre distance closed form vs point-circle distance, 100 probes.
    double err = 0.0;
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int rep = 0; rep < 100; ++rep) {
      const GreatCircle c = fibre_circle(random_dir(rng), random_dir(rng));
      const GreatCircle c1 = fibre_circle(random_dir(rng), random_dir(rng));
      const double t = 2.0 * kPi * u01(rng);
      err = std::max(err, std::fabs(dist_along_fibre(c, t, c1) -
                                    dist_point_circle(circle_point(c, t), c1)));
    }
    add(suite, 7, "geometry/fibre-distance-closed-form", err, 1e-10, timer.seconds());
  }
}

// ---------------------------------------------------------------------------
// quadrature invariants

void check_quadrature(Suite& suite, std::mt19937_64& rng) {
  {
    Timer timer;
    // Doubling the circle resolution beyond N = 256 leaves smooth kernel
    // means unchanged to 1e-10.
    double err = 0.0;
    for (const KernelSpec spec : {abel_poisson(0.9), de_la_vallee_poussin(50)}) {
      const Quat q0 = random_quat(rng);
      const RbfMixture m{{RbfComponent{q0, 1.0, spec}}};
      const OdfEvaluator f = fast_mixture(m);
      const GreatCircle c = fibre_circle(random_dir(rng), random_dir(rng));
      const double a = mean_over(c, f.f, build_circle_rule(512));
      const double b = mean_over(c, f.f, build_circle_rule(1024));
      err = std::max(err, std::fabs(a - b));
    }
    add(suite, 0, "quadrature/circle-doubling-converged", err, 1e-10, timer.seconds());
  }
  {
    Timer timer;
    // Torus rule at theta = 0 reproduces the great-circle mean.
    const RbfMixture m{{RbfComponent{random_quat(rng), 1.0, de_la_vallee_poussin(4)}}};
    const OdfEvaluator f = fast_mixture(m);
    const GreatCircle c = fibre_circle(random_dir(rng), random_dir(rng));
    const TorusRule torus = build_torus_rule(64, 64);
    const double a = mean_over(make_torus(c, 0.0), f.f, torus);
    const double b = mean_over(c, f.f, build_circle_rule(64));
    add(suite, 0, "quadrature/torus-theta0-degenerate", std::fabs(a - b), 1e-12, timer.seconds());
  }
  {
    Timer timer;
    // Degree-L sphere rule integrates Y_l^m Y_l'^m' to delta-orthonormality
    // for l, l' <= L/2.
    const int L = 16;
    const Sphere2Rule rule = build_sphere2_rule(L);
    double err = 0.0;
    for (int l = 0; l <= L / 2; l += 2) {
      for (int lp = l; lp <= L / 2; lp += 3) {
        for (int m = -l; m <= l; m += std::max(1, l)) {
          for (int mp = -lp; mp <= lp; mp += std::max(1, lp)) {
            const double v = 4.0 * kPi *
                             mean_over_sphere2(
                                 [&](const Dir3& d) {
                                   return sph_harm(l, m, d) * sph_harm(lp, mp, d);
                                 },
                                 rule);
            const double expect = (l == lp && m == mp) ? 1.0 : 0.0;
            err = std::max(err, std::fabs(v - expect));
          }
        }
      }
    }
    add(suite, 0, "quadrature/sphere-harmonic-orthonormality", err, 1e-12, timer.seconds());
  }
}

// ---------------------------------------------------------------------------
// kernels invariants (criteria 2 and 4)

void check_kernels(Suite& suite, std::mt19937_64& rng, double tol_identity) {
  {
    Timer timer;
    // Chebyshev series rebuilt from kernel_coeff matches kernel_value.
    double err = 0.0;
    for (const KernelSpec spec : {abel_poisson(0.5), de_la_vallee_poussin(4)}) {
      for (int i = 0; i < 50; ++i) {
        const double omega = 2.0 * kPi * i / 50.0;
        double series = 0.0;
        for (int l = 0; l < 400; ++l) {
          const double a = kernel_coeff(spec, l);
          series += a * cheb_u(2 * l, std::cos(0.5 * omega));
          if (l > 4 && std::fabs(a) * (2 * l + 1) < 1e-14) break;
        }
        err = std::max(err, std::fabs(series - kernel_value(spec, omega)));
      }
    }
    add(suite, 0, "kernels/series-consistency", err, 1e-8, timer.seconds());
  }
  {
    Timer timer;
    // One-fold closed form vs great-circle quadrature, 100 random circles per
    // kernel.
    double err = 0.0;
    const CircleRule rule = build_circle_rule(256);
    for (const KernelSpec spec :
         {abel_poisson(0.3), abel_poisson(0.5), abel_poisson(0.8), de_la_vallee_poussin(1),
          de_la_vallee_poussin(4), de_la_vallee_poussin(20)}) {
      const Quat q0 = random_quat(rng);
      const OdfEvaluator f = fast_mixture(RbfMixture{{RbfComponent{q0, 1.0, spec}}});
      for (int rep = 0; rep < 100; ++rep) {
        const Dir3 h = random_dir(rng);
        const Dir3 r = random_dir(rng);
        const GreatCircle c = fibre_circle(h, r);
        const double eta = angle_between(rotate3(q0, h), r);
        err = std::max(err, std::fabs(mean_over(c, f.f, rule) - kernel_radon(spec, eta)));
      }
    }
    add(suite, 2, "kernels/radon-closed-form", err, 1e-8, timer.seconds());
  }
  {
    Timer timer;
    // Twofold closed form vs double circle quadrature, 20 random pairs per
    // family plus the eta1 = eta2 line.
    double err_generic = 0.0, err_singular = 0.0;
    const CircleRule rule = build_circle_rule(96);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (const KernelSpec spec : {abel_poisson(0.5), de_la_vallee_poussin(4)}) {
      auto double_quad = [&](const GreatCircle& c1, const GreatCircle& c2) {
        double acc = 0.0;
        for (double s : rule.angles) {
          const Quat p1c = circle_point(c1, s).conj();
          double inner = 0.0;
          for (double t : rule.angles) {
            const Quat p = p1c * circle_point(c2, t);
            const double omega = 2.0 * std::acos(std::fabs(clamp1(p.w)));
            inner += kernel_value(spec, omega);
          }
          acc += inner * rule.weight;
        }
        return acc * rule.weight;
      };
      for (int rep = 0; rep < 20; ++rep) {
        const Dir3 h1 = random_dir(rng), r1 = random_dir(rng);
        const Dir3 h2 = random_dir(rng), r2 = random_dir(rng);
        const double g = double_quad(fibre_circle(h1, r1), fibre_circle(h2, r2));
        const double closed =
            kernel_double_radon(spec, angle_between(h1, h2), angle_between(r1, r2));
        err_generic = std::max(err_generic, std::fabs(g - closed));
      }
      for (int rep = 0; rep < 5; ++rep) {
        const double eta = 0.2 + 2.5 * u01(rng);
        const Dir3 h1 = random_dir(rng), r1 = random_dir(rng);
        const Dir3 h2 = in_plane_circle_point(h1, random_dir(rng), eta);
        const Dir3 r2 = in_plane_circle_point(r1, random_dir(rng), eta);
        const double g = double_quad(fibre_circle(h1, r1), fibre_circle(h2, r2));
        const double closed = kernel_double_radon(spec, eta, eta);
        err_singular = std::max(err_singular, std::fabs(g - closed));
      }
    }
    const double t = timer.seconds();
    add(suite, 4, "kernels/twofold-closed-form", err_generic,
        tol_identity > 0 ? tol_identity : 1e-6, t / 2);
    add(suite, 4, "kernels/twofold-equal-angle-line", err_singular, 1e-5, t / 2);
  }
  {
    Timer timer;
    // Positivity of all three closed forms on their domains.
    double worst = 0.0;
    for (const KernelSpec spec :
         {abel_poisson(0.3), abel_poisson(0.8), de_la_vallee_poussin(1), de_la_vallee_poussin(9)}) {
      for (int i = 0; i <= 40; ++i) {
        const double w = 2.0 * kPi * i / 41.0;
        worst = std::min(worst, kernel_value(spec, w));
        const double eta = kPi * i / 40.0;
        worst = std::min(worst, kernel_radon(spec, eta));
        for (int j = 0; j <= 10; ++j)
          worst = std::min(worst, kernel_double_radon(spec, eta, kPi * j / 10.0));
      }
    }
    add(suite, 0, "kernels/positivity", std::max(0.0, -worst), 1e-12, timer.seconds());
  }
}

// ---------------------------------------------------------------------------
// transforms invariants (criteria 1, 3, 5, 8, 15)

void check_transforms(Suite& suite, std::mt19937_64& rng, double tol_identity) {
  {
    Timer timer;
    // All transforms of f == 1 equal 1.
    const TransformRules rules = TransformRules::make(64, 16, 48);
    const OdfEvaluator one{[](const Quat&) { return 1.0; }, true};
    const CircleFunction phi1{[](const Dir3&, const Dir3&) { return 1.0; }};
    const Dir3 h = random_dir(rng), r = random_dir(rng);
    const Quat q = random_quat(rng);
    const GreatCircle c = fibre_circle(h, r);
    double err = 0.0;
    err = std::max(err, std::fabs(radon(one, c, rules) - 1.0));
    err = std::max(err, std::fabs(xray(one, h, r, rules) - 1.0));
    err = std::max(err, std::fabs(generalized_radon(one, c, 0.8, rules) - 1.0));
    err = std::max(err, std::fabs(angle_density(one, h, r, 0.7, rules) - 1.0));
    err = std::max(err, std::fabs(w_transform(one, h, r, 0.9, rules) - 1.0));
    err = std::max(err, std::fabs(dual_radon(phi1, q, rules) - 1.0));
    err = std::max(err, std::fabs(generalized_dual_radon(phi1, q, 0.5, rules) - 1.0));
    err = std::max(err, std::fabs(translate_s3(one, q, 1.1, rules) - 1.0));
    add(suite, 1, "transforms/unit-normalization", err, 1e-12, timer.seconds());
  }
  {
    Timer timer;
    // Prop 1: angle density equals the generalized Radon transform.
    const TransformRules rules = TransformRules::make(64, 16, 64);
    const OdfEvaluator f = fast_mixture(two_component_dlvp4(rng));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double err = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
      const Dir3 h = random_dir(rng), r = random_dir(rng);
      const double rho = 0.1 + (kPi - 0.2) * u01(rng);
      const double a = angle_density(f, h, r, rho, rules);
      const double b = generalized_radon(f, fibre_circle(h, r), rho, rules);
      err = std::max(err, std::fabs(a - b));
    }
    add(suite, 3, "transforms/prop1-angle-density", err, tol_identity > 0 ? tol_identity : 1e-6,
        timer.seconds());
  }
  {
    Timer timer;
    // Asgeirsson mean value identity: the two small-circle averaging orders
    // of the Radon transform agree.
    const TransformRules rules = TransformRules::make(48, 16, 48);
    const OdfEvaluator f = fast_mixture(two_component_dlvp4(rng));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double err = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const Dir3 h = random_dir(rng), r = random_dir(rng);
      const double rho = 0.1 + (kPi - 0.2) * u01(rng);
      const double lhs = translate_sphere_fn(
          [&](const Dir3& hp) { return radon(f, fibre_circle(hp, r), rules); }, h, rho, rules);
      const double rhs = translate_sphere_fn(
          [&](const Dir3& rp) { return radon(f, fibre_circle(h, rp), rules); }, r, rho, rules);
      err = std::max(err, std::fabs(lhs - rhs));
    }
    add(suite, 5, "transforms/asgeirsson-identity", err, 1e-8, timer.seconds());
  }
  {
    Timer timer;
    // Prop 3: the translated fibre average equals the generalized dual of the
    // Radon transform.
    const TransformRules rules = TransformRules::make(64, 16, 48);
    const OdfEvaluator f = fast_mixture(two_component_dlvp4(rng));
    const CircleFunction phi{
        [&, rules](const Dir3& h, const Dir3& r) { return radon(f, fibre_circle(h, r), rules); }};
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double err = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      const Quat q = random_quat(rng);
      const double rho = 0.05 + (0.5 * kPi - 0.15) * u01(rng);
      const double lhs = translated_fibre_average(f, q, rho, rules);
      const double rhs = generalized_dual_radon(phi, q, rho, rules);
      err = std::max(err, std::fabs(lhs - rhs));
    }
    add(suite, 8, "transforms/prop3-dual-factorization", err,
        tol_identity > 0 ? tol_identity : 1e-5, timer.seconds());
  }
  {
    Timer timer;
    // Quarter-circle reduction of the dual factorization for even f.
    const TransformRules rules = TransformRules::make(64, 16, 48);
    const OdfEvaluator f = fast_mixture(two_component_dlvp4(rng));
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double err = 0.0;
    std::vector<double> gl_x, gl_w;
    gauss_legendre(32, gl_x, gl_w);
    for (int rep = 0; rep < 5; ++rep) {
      const Quat q = random_quat(rng);
      const double rho = 0.05 + (0.5 * kPi - 0.15) * u01(rng);
      const double lhs = translated_fibre_average(f, q, rho, rules);
      // (2/pi) Int_0^{pi/2} (T^{d} f)(q) dt with cos d = cos rho cos t.
      double rhs = 0.0;
      for (size_t i = 0; i < gl_x.size(); ++i) {
        const double t = 0.25 * kPi * (gl_x[i] + 1.0);
        const double d = std::acos(clamp1(std::cos(rho) * std::cos(t)));
        rhs += 0.25 * kPi * gl_w[i] * translate_s3(f, q, d, rules);
      }
      rhs *= 2.0 / kPi;
      err = std::max(err, std::fabs(lhs - rhs));
    }
    add(suite, 0, "transforms/quarter-circle-form", err, tol_identity > 0 ? tol_identity : 1e-6,
        timer.seconds());
  }
  {
    Timer timer;
    // Odd functions lie in the kernel of the Radon transform.
    const TransformRules rules = TransformRules::make(64, 8, 16);
    const Quat a = random_quat(rng), b = random_quat(rng);
    const OdfEvaluator odd1{[](const Quat& q) { return q.w; }, false};
    const OdfEvaluator odd2{[a](const Quat& q) { return dot(a, q); }, false};
    const OdfEvaluator odd3{[b](const Quat& q) { return cheb_u(5, clamp1(dot(b, q))); }, false};
    double err = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      const GreatCircle c = fibre_circle(random_dir(rng), random_dir(rng));
      for (const auto* f : {&odd1, &odd2, &odd3})
        err = std::max(err, std::fabs(radon(*f, c, rules)));
    }
    add(suite, 15, "transforms/odd-function-kernel", err, 1e-10, timer.seconds());
  }
  {
    Timer timer;
    // Friedel symmetry of W holds exactly by construction.
    const TransformRules rules = TransformRules::make(32, 8, 16);
    const OdfEvaluator f = fast_mixture(two_component_dlvp4(rng));
    double err = 0.0;
    for (int rep = 0; rep < 5; ++rep) {
      const Dir3 h = random_dir(rng), r = random_dir(rng);
      const double rho = 0.3 + 0.4 * rep;
      err = std::max(err, std::fabs(w_transform(f, h, r, rho, rules) -
                                    w_transform(f, -h, r, rho, rules)));
    }
    add(suite, 0, "transforms/friedel-w-symmetry", err, 1e-15, timer.seconds());
  }
}

// ---------------------------------------------------------------------------
// harmonics invariants (criteria 6, 10, 11)

void check_harmonics(Suite& suite, std::mt19937_64& rng) {
  {
    Timer timer;
    // Funk-Hecke: small-circle averages of harmonics scale by P_l(tau).
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double err = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const Dir3 r = random_dir(rng);
      const double tau = -1.0 + 2.0 * u01(rng);
      const int l = static_cast<int>(u01(rng) * 10.99);
      const int n = -l + static_cast<int>(u01(rng) * (2 * l + 0.99));
      const double avg = circle_avg_harmonic(l, n, r, tau);
      err = std::max(err, std::fabs(avg - legendre(l, tau) * sph_harm(l, n, r)));
    }
    add(suite, 6, "harmonics/funk-hecke", err, 1e-10, timer.seconds());
  }
  {
    Timer timer;
    // Per-degree scaling calibration: constancy across (m, n) and strict
    // growth in l; the measured sigma_l sit next to sqrt(2l+1).
    const Quat q0 = random_quat(rng);
    double dev = 0.0;
    std::vector<double> sigmas;
    std::ostringstream detail;
    detail.precision(10);
    for (int l : {2, 4, 6, 8}) {
      const ScalingCalibration cal = calibrate_scaling(l, q0);
      dev = std::max(dev, cal.max_deviation);
      sigmas.push_back(cal.sigma);
      detail << (l > 2 ? "; " : "") << "sigma_" << l << " = " << cal.sigma
             << " (sqrt(2l+1) = " << std::sqrt(2.0 * l + 1.0) << ")";
    }
    const double t = timer.seconds();
    add(suite, 10, "harmonics/scaling-constancy", dev, 1e-8, t, detail.str());
    double min_gap = 1e300;
    for (size_t i = 1; i < sigmas.size(); ++i) min_gap = std::min(min_gap, sigmas[i] - sigmas[i - 1]);
    add(suite, 10, "harmonics/scaling-strict-growth", std::max(0.0, -min_gap) + (min_gap > 0 ? 0.0 : 1.0),
        0.0, 0.0, "sigma gaps must be positive");
  }
  {
    Timer timer;
    // dlVP finite expansion: Chebyshev projections of kernel_value vanish for
    // l > kappa and match kernel_coeff below.
    const KernelSpec spec = de_la_vallee_poussin(4);
    const int nr = 64;
    auto cheb_proj = [&](int l) {
      double acc = 0.0;
      for (int k = 1; k <= nr; ++k) {
        const double psi = kPi * k / (nr + 1);
        const double s = std::sin(psi);
        acc += 2.0 / (nr + 1) * s * s * kernel_value(spec, 2.0 * psi) * cheb_u(2 * l, std::cos(psi));
      }
      return acc;
    };
    double err_vanish = 0.0;
    for (int l = 5; l <= 10; ++l) err_vanish = std::max(err_vanish, std::fabs(cheb_proj(l)));
    double err_match = 0.0;
    const double scale = cheb_proj(0) / kernel_coeff(spec, 0);
    for (int l = 0; l <= 4; ++l)
      err_match = std::max(err_match, std::fabs(cheb_proj(l) - scale * kernel_coeff(spec, l)));
    const double t = timer.seconds();
    add(suite, 11, "harmonics/dlvp-finite-expansion", err_vanish, 1e-10, t / 2);
    add(suite, 11, "harmonics/dlvp-coefficient-match", err_match, 1e-8, t / 2,
        "global constant = " + format_double(scale));
  }
}

// ---------------------------------------------------------------------------
// reconstruction invariants (criteria 9, 12, 13, 14)

void check_reconstruction(Suite& suite, std::mt19937_64& rng, double tol_identity) {
  {
    Timer timer;
    // Prop 4: the rho <-> eta swap identity for radially symmetric models.
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double err = 0.0;
    for (const KernelSpec spec : {de_la_vallee_poussin(4), abel_poisson(0.5)}) {
      const Quat q0 = random_quat(rng);
      const RbfMixture single{{RbfComponent{q0, 1.0, spec}}};
      for (int rep = 0; rep < 10; ++rep) {
        const double a = 0.1 + (kPi - 0.2) * u01(rng);
        const double b = 0.1 + (kPi - 0.2) * u01(rng);
        const Dir3 h = random_dir(rng);
        const Dir3 qh = rotate3(q0, h);
        const Dir3 r_eta_a = in_plane_circle_point(qh, random_dir(rng), a);
        const Dir3 r_eta_b = in_plane_circle_point(qh, random_dir(rng), b);
        const double w1 = forward_w_rbf(single, h, r_eta_a, b);
        const double w2 = forward_w_rbf(single, h, r_eta_b, a);
        err = std::max(err, std::fabs(w1 - w2));
      }
    }
    add(suite, 9, "reconstruction/prop4-swap", err, 1e-8, timer.seconds());
  }
  {
    Timer timer;
    // Closed-form W of an RBF model matches the quadrature W transform, and
    // the forward map is linear in the weights.
    const TransformRules rules = TransformRules::make(64, 16, 48);
    const RbfMixture model = two_component_dlvp4(rng);
    const OdfEvaluator f = fast_mixture(model);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double err = 0.0, err_lin = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      const Dir3 h = random_dir(rng), r = random_dir(rng);
      const double rho = 0.1 + (kPi - 0.2) * u01(rng);
      const double closed = forward_w_rbf(model, h, r, rho);
      err = std::max(err, std::fabs(closed - w_transform(f, h, r, rho, rules)));
      double by_parts = 0.0;
      for (const auto& comp : model.components) {
        RbfMixture single{{RbfComponent{comp.center, 1.0, comp.spec}}};
        by_parts += comp.weight * forward_w_rbf(single, h, r, rho);
      }
      err_lin = std::max(err_lin, std::fabs(closed - by_parts));
    }
    const double t = timer.seconds();
    add(suite, 0, "reconstruction/forward-w-vs-quadrature", err,
        tol_identity > 0 ? tol_identity : 1e-6, t);
    add(suite, 0, "reconstruction/forward-w-linearity", err_lin, 1e-12, 0.0);
  }
  {
    Timer timer;
    // RBF round trip: 3-component dlVP kappa=20 truth against a 30-center
    // dictionary, noiseless then with sigma = 0.01 noise.
    const KernelSpec spec = de_la_vallee_poussin(20);
    std::vector<Quat> centers = s3_center_grid(27, 11);
    RbfMixture truth;
    std::mt19937_64 rng_truth(77);
    const double weights[3] = {0.5, 0.3, 0.2};
    for (int j = 0; j < 3; ++j) {
      const Quat c = random_quat(rng_truth);
      truth.components.push_back({c, weights[j], spec});
      centers.push_back(c);
    }
    const DesignGrid design = DesignGrid::random(500, 99, 0.1, kPi - 0.1);
    const auto fit_and_measure = [&](double sigma, double ridge) {
      const auto samples = synthesize_samples(truth, design, sigma, 1234);
      FitReport report;
      const RbfMixture fitted = fit_rbf(samples, centers, spec, ridge, false, &report);
      double worst = 0.0;
      for (size_t j = 0; j < centers.size(); ++j) {
        const double expect = j >= 27 ? weights[j - 27] : 0.0;
        worst = std::max(worst, std::fabs(fitted.components[j].weight - expect) / 0.2);
      }
      return worst;
    };
    const double noiseless = fit_and_measure(0.0, 0.0);
    const double noisy = fit_and_measure(0.01, 1e-10);
    const double t = timer.seconds();
    add(suite, 12, "reconstruction/rbf-roundtrip-noiseless", noiseless, 1e-3, t / 2);
    add(suite, 12, "reconstruction/rbf-roundtrip-noisy", noisy, 5e-2, t / 2);
  }
  {
    Timer timer;
    // Harmonic round trip and Friedel non-identifiability.
    const int L = 4;
    CoeffTable table(L);
    std::mt19937_64 rng_t(5150);
    std::uniform_real_distribution<double> u11(-1.0, 1.0);
    for (int l = 0; l <= L; l += 2)
      for (int m = -l; m <= l; ++m)
        for (int n = -l; n <= l; ++n) table.set(l, m, n, u11(rng_t) / ((l + 1.0) * (l + 1.0)));
    const HarmonicModel truth{table};
    const DesignGrid design = DesignGrid::random(400, 31, 0.05, kPi - 0.05);
    const auto samples = synthesize_samples(truth, design, 0.0, 7);
    const HarmonicModel fitted = fit_harmonic(samples, L, 0.0);
    double err = 0.0;
    for (int l = 0; l <= L; l += 2)
      for (int m = -l; m <= l; ++m)
        for (int n = -l; n <= l; ++n)
          err = std::max(err, std::fabs(fitted.table.at(l, m, n) - table.at(l, m, n)));
    const double t1 = timer.seconds();
    add(suite, 13, "reconstruction/harmonic-roundtrip", err, 1e-4, t1);

    // Odd-degree perturbations change no sample and leave the fit unchanged.
    Timer timer2;
    const TransformRules rules = TransformRules::make(32, 8, 16);
    const Quat a = random_quat(rng);
    const OdfEvaluator odd{[a](const Quat& q) { return 0.5 * cheb_u(3, clamp1(dot(a, q))); },
                           false};
    double max_change = 0.0;
    auto perturbed = samples;
    for (size_t i = 0; i < perturbed.size(); ++i) {
      const double w_odd =
          w_transform(odd, perturbed[i].h, perturbed[i].r, perturbed[i].rho, rules);
      max_change = std::max(max_change, std::fabs(w_odd));
      perturbed[i].value += w_odd;
    }
    const HarmonicModel refit = fit_harmonic(perturbed, L, 0.0);
    double err_fit = 0.0;
    for (int l = 0; l <= L; l += 2)
      for (int m = -l; m <= l; ++m)
        for (int n = -l; n <= l; ++n)
          err_fit = std::max(err_fit, std::fabs(refit.table.at(l, m, n) - fitted.table.at(l, m, n)));
    const double t2 = timer2.seconds();
    add(suite, 13, "reconstruction/friedel-sample-invariance", max_change, 1e-10, t2 / 2);
    add(suite, 13, "reconstruction/friedel-identical-fit", err_fit, 1e-8, t2 / 2);
  }
  {
    Timer timer;
    // Abel-equation reconstruction: constants exactly, a central dlVP peak to
    // 2 percent, and a two-component mixture pointwise to 5 percent.
    const OdfEvaluator one{[](const Quat&) { return 1.0; }, true};
    const TransformRules tiny = TransformRules::make(16, 8, 16);
    const Quat q_any = random_quat(rng);
    const double v1 = abel_reconstruct(one, q_any, 256, tiny);
    add(suite, 14, "reconstruction/abel-constant", std::fabs(v1 - 1.0), 1e-8, timer.seconds());

    Timer timer2;
    const TransformRules rules = TransformRules::make(24, 16, 32);
    const Quat q0 = random_quat(rng);
    const KernelSpec spec = de_la_vallee_poussin(4);
    const OdfEvaluator single = fast_mixture(RbfMixture{{RbfComponent{q0, 1.0, spec}}});
    const double peak = kernel_value(spec, 0.0);
    const double rec = abel_reconstruct(single, q0, 512, rules);
    add(suite, 14, "reconstruction/abel-central-peak", std::fabs(rec - peak) / peak, 2e-2,
        timer2.seconds());

    Timer timer3;
    const RbfMixture mix = two_component_dlvp4(rng);
    const OdfEvaluator f = fast_mixture(mix);
    double err = 0.0;
    for (int rep = 0; rep < 10; ++rep) {
      const Quat q = random_quat(rng);
      // Even part of the mixture is what any inversion of W can see.
      const double expect = 0.5 * (f(q) + f(-q));
      const double got = abel_reconstruct(f, q, 512, rules);
      err = std::max(err, std::fabs(got - expect) / std::max(1e-9, std::fabs(expect)));
    }
    add(suite, 14, "reconstruction/abel-mixture-pointwise", err, 5e-2, timer3.seconds());
  }
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& opts) {
  Suite suite;
  std::mt19937_64 rng(opts.seed);
  check_geometry(suite, rng);
  check_quadrature(suite, rng);
  check_kernels(suite, rng, opts.tol_identity);
  check_transforms(suite, rng, opts.tol_identity);
  check_harmonics(suite, rng);
  check_reconstruction(suite, rng, opts.tol_identity);
  return suite;
}

std::string format_check_line(const CheckResult& c) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-4s %-45s measured %.3e  tol %.3e  (%.2fs)",
                c.pass() ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.tol, c.seconds);
  std::string line = buf;
  if (!c.detail.empty()) line += "\n     " + c.detail;
  return line;
}

}  // namespace s3radon
