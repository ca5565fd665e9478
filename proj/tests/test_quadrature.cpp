#include <doctest.h>

#include <cmath>
#include <random>

#include "s3radon/harmonics.hpp"
#include "s3radon/kernels.hpp"
#include "s3radon/quadrature.hpp"

using namespace s3radon;

namespace {
std::mt19937_64 rng(777);
Dir3 rand_dir() {
  std::normal_distribution<double> g;
  double x, y, z, n;
  do {
    x = g(rng);
    y = g(rng);
    z = g(rng);
    n = std::sqrt(x * x + y * y + z * z);
  } while (n < 1e-12);
  return {x / n, y / n, z / n};
}
Quat rand_quat() {
  std::normal_distribution<double> g;
  return normalized(Quat{g(rng), g(rng), g(rng), g(rng)});
}
}  // namespace

TEST_CASE("circle rule is uniform with weights 1/N") {
  const CircleRule rule = build_circle_rule(8);
  REQUIRE(rule.angles.size() == 8);
  for (int k = 0; k < 8; ++k) CHECK(rule.angles[k] == doctest::Approx(2 * kPi * k / 8));
  CHECK(rule.weight == doctest::Approx(1.0 / 8));
  CHECK_THROWS_AS(build_circle_rule(3), std::invalid_argument);
}

TEST_CASE("sphere rule normalizes constants exactly and kills harmonics") {
  const Sphere2Rule rule = build_sphere2_rule(16);
  double wsum = 0.0;
  for (double w : rule.weights) {
    CHECK(w > 0.0);
    wsum += w;
  }
  CHECK(std::fabs(wsum - 1.0) < 1e-14);
  CHECK(mean_over_sphere2([](const Dir3&) { return 1.0; }, rule) == doctest::Approx(1.0));
  const double y32 = mean_over_sphere2([](const Dir3& d) { return sph_harm(3, 2, d); }, rule);
  CHECK(std::fabs(y32) < 1e-14);
  CHECK_THROWS_AS(build_sphere2_rule(2), std::invalid_argument);
}

TEST_CASE("gauss-legendre nodes integrate polynomials exactly") {
  std::vector<double> x, w;
  gauss_legendre(12, x, w);
  double acc = 0.0;
  for (size_t i = 0; i < x.size(); ++i) acc += w[i] * std::pow(x[i], 22);
  CHECK(acc == doctest::Approx(2.0 / 23).epsilon(1e-13));
}

TEST_CASE("means of one are exactly one on every domain") {
  const auto one_q = [](const Quat&) { return 1.0; };
  const auto one_d = [](const Dir3&) { return 1.0; };
  const GreatCircle c = fibre_circle(rand_dir(), rand_dir());
  CHECK(mean_over(c, one_q, build_circle_rule(64)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_over(SmallCircle{rand_dir(), 0.8}, one_d, build_circle_rule(64)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_over(make_torus(c, 0.4), one_q, build_torus_rule(32, 32)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_over_small_sphere3(rand_quat(), 0.9, one_q, build_sphere2_rule(8)) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(mean_over_sphere3(one_q, 16, build_sphere2_rule(8)) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("great circle mean of Sc^2 over the (e1,e2) fibre") {
  // Sc(q(t)) = cos(pi/4) cos t, so the mean of Sc^2 is cos^2(pi/4)/2 = 1/4.
  const GreatCircle c = fibre_circle({1, 0, 0}, {0, 1, 0});
  const double v = mean_over(c, [](const Quat& q) { return q.w * q.w; }, build_circle_rule(64));
  CHECK(std::fabs(v - 0.25) < 1e-12);
}

TEST_CASE("great circle mean of an Abel-Poisson kernel hits the closed form") {
  const KernelSpec spec = abel_poisson(0.5);
  const Quat q0 = quat_e0();
  const GreatCircle c = fibre_circle({1, 0, 0}, {0, 1, 0});
  const double quad = mean_over(
      c,
      [&](const Quat& q) {
        return kernel_value(spec, 2.0 * std::acos(std::min(1.0, std::fabs(dot(q0, q)))));
      },
      build_circle_rule(256));
  const double eta = angle_between(rotate3(q0, Dir3{1, 0, 0}), Dir3{0, 1, 0});
  CHECK(std::fabs(quad - kernel_radon(spec, eta)) < 1e-8);
}

TEST_CASE("torus rule reduces to its core at theta 0 and converges fast") {
  const GreatCircle c = fibre_circle(rand_dir(), rand_dir());
  const Quat q0 = rand_quat();
  const auto f = [&](const Quat& q) {
    const double x = dot(q0, q);
    return (x * x) * (x * x);
  };
  const double a = mean_over(make_torus(c, 0.0), f, build_torus_rule(64, 64));
  const double b = mean_over(c, f, build_circle_rule(64));
  CHECK(std::fabs(a - b) < 1e-12);
  const double c1 = mean_over(make_torus(c, 0.6), f, build_torus_rule(32, 32));
  const double c2 = mean_over(make_torus(c, 0.6), f, build_torus_rule(64, 64));
  CHECK(std::fabs(c1 - c2) < 1e-13);
}

TEST_CASE("small-sphere mean respects the degenerate radii") {
  const Quat q = rand_quat();
  const auto f = [](const Quat& p) { return p.w + 2.0 * p.x; };
  const Sphere2Rule rule = build_sphere2_rule(8);
  CHECK(mean_over_small_sphere3(q, 0.0, f, rule) == doctest::Approx(f(q)));
  CHECK(mean_over_small_sphere3(q, kPi, f, rule) == doctest::Approx(f(-q)));
}

TEST_CASE("sphere2 rule is delta-orthonormal to half its degree") {
  const int L = 24;
  const Sphere2Rule rule = build_sphere2_rule(L);
  double err = 0.0;
  for (int l = 0; l <= L / 2; l += 4) {
    for (int lp = l; lp <= L / 2; lp += 5) {
      for (int m = -l; m <= l; m += (l ? l : 1)) {
        for (int mp = -lp; mp <= lp; mp += (lp ? lp : 1)) {
          const double v =
              4 * kPi *
              mean_over_sphere2(
                  [&](const Dir3& d) { return sph_harm(l, m, d) * sph_harm(lp, mp, d); }, rule);
          err = std::max(err, std::fabs(v - ((l == lp && m == mp) ? 1.0 : 0.0)));
        }
      }
    }
  }
  CHECK(err < 1e-12);
}

TEST_CASE("build_rule wraps every domain kind") {
  CHECK(build_rule(DomainKind::Circle, 16).circle.angles.size() == 16);
  CHECK(build_rule(DomainKind::Sphere2, 8).sphere.degree == 8);
  CHECK(build_rule(DomainKind::SmallSphere3, 8).sphere.nodes.size() > 0);
  CHECK(build_rule(DomainKind::Torus, 16).torus.s.angles.size() == 16);
}
