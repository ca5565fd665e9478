#include <doctest.h>

#include <cmath>
#include <random>

#include "s3radon/kernels.hpp"
#include "s3radon/quadrature.hpp"

using namespace s3radon;

namespace {
std::mt19937_64 rng(99);
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
}  // namespace

TEST_CASE("special functions hit their classical values") {
  CHECK(beta_fn(1.0, 1.0) == doctest::Approx(1.0));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(beta_fn(1.5, 1.5) == doctest::Approx(kPi / 8).epsilon(1e-13));
  CHECK_THROWS_AS(beta_fn(-1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(gamma_fn(0.0), std::invalid_argument);
}

TEST_CASE("hyp2f1 basic identities") {
  CHECK(hyp2f1(0.3, 1.7, 2.2, 0.0) == doctest::Approx(1.0));
  // 2F1(1,1;2;z) = -log(1-z)/z
  CHECK(hyp2f1(1, 1, 2, 0.5) == doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-12));
  CHECK(hyp2f1(1, 1, 2, -0.7) == doctest::Approx(-std::log(1.7) / -0.7).epsilon(1e-12));
  // (1-z)^{-a} = 2F1(a, b; b; z)
  CHECK(hyp2f1(0.5, 2.0, 2.0, 0.3) == doctest::Approx(std::pow(0.7, -0.5)).epsilon(1e-12));
  // terminating series works at any argument: 1 - 3 + 3.375
  CHECK(hyp2f1(-2, 0.5, 1.0, 3.0) == doctest::Approx(1.375).epsilon(1e-14));
  CHECK_THROWS_AS(hyp2f1(1, 1, 1, 2.0), std::invalid_argument);
}

TEST_CASE("complete elliptic integral of the second kind") {
  CHECK(ellip_e(0.0) == doctest::Approx(kPi / 2).epsilon(1e-14));
  CHECK(ellip_e(1.0) == doctest::Approx(1.0));
  // series value at m = 1/2 (Abramowitz & Stegun 17.3.3 reference value)
  CHECK(ellip_e(0.5) == doctest::Approx(1.3506438810476755).epsilon(1e-12));
  CHECK_THROWS_AS(ellip_e(1.5), std::invalid_argument);
}

TEST_CASE("chebyshev U values") {
  CHECK(cheb_u(0, 0.3) == 1.0);
  CHECK(cheb_u(1, 0.3) == doctest::Approx(0.6));
  for (double x : {-0.9, -0.2, 0.4, 0.99}) {
    const double psi = std::acos(x);
    CHECK(cheb_u(7, x) == doctest::Approx(std::sin(8 * psi) / std::sin(psi)).epsilon(1e-12));
  }
}

TEST_CASE("kernel specs validate their kappa domains") {
  CHECK_THROWS_AS(abel_poisson(1.2), std::invalid_argument);
  CHECK_THROWS_AS(abel_poisson(0.0), std::invalid_argument);
  CHECK_THROWS_AS(de_la_vallee_poussin(-1.0), std::invalid_argument);
}

TEST_CASE("kernel values at the reference points") {
  // Abel-Poisson kappa -> 0 tends to the uniform kernel.
  const KernelSpec tiny = abel_poisson(1e-8);
  CHECK(kernel_value(tiny, 1.1) == doctest::Approx(1.0).epsilon(1e-6));
  // dlVP kappa=1 at omega=0: B(3/2,1/2)/B(3/2,3/2) = 4.
  CHECK(kernel_value(de_la_vallee_poussin(1), 0.0) == doctest::Approx(4.0).epsilon(1e-13));
  // Abel-Poisson kappa=0.5 at omega=0: 0.5 (0.75/0.0625 + 0.75/5.0625).
  CHECK(kernel_value(abel_poisson(0.5), 0.0) ==
        doctest::Approx(0.5 * (0.75 / 0.0625 + 0.75 / 5.0625)).epsilon(1e-13));
  CHECK_THROWS_AS(kernel_value(abel_poisson(0.5), -0.1), std::invalid_argument);
}

TEST_CASE("kernel coefficients") {
  CHECK(kernel_coeff(abel_poisson(0.37), 0) == doctest::Approx(1.0));
  CHECK(kernel_coeff(abel_poisson(0.5), 2) == doctest::Approx(5 * std::pow(0.5, 4)));
  CHECK(kernel_coeff(de_la_vallee_poussin(4), 0) == doctest::Approx(1.0).epsilon(1e-12));
  for (int l = 5; l <= 12; ++l)
    CHECK(std::fabs(kernel_coeff(de_la_vallee_poussin(4), l)) < 1e-12);
  // kappa=1: K = 4 cos^2(omega/2) = U_0 + U_2, so a_0 = a_1 = 1.
  CHECK(kernel_coeff(de_la_vallee_poussin(1), 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kernel_coeff(de_la_vallee_poussin(1), 1) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kernel value equals its Chebyshev series") {
  for (const KernelSpec spec : {abel_poisson(0.3), abel_poisson(0.8), de_la_vallee_poussin(7)}) {
    for (int i = 0; i < 24; ++i) {
      const double omega = 2 * kPi * i / 24.0;
      double series = 0.0;
      for (int l = 0; l < 600; ++l) {
        const double a = kernel_coeff(spec, l);
        series += a * cheb_u(2 * l, std::cos(0.5 * omega));
        if (l > 2 && std::fabs(a) * (2 * l + 1) < 1e-15) break;
      }
      CHECK(std::fabs(series - kernel_value(spec, omega)) < 1e-8);
    }
  }
}

TEST_CASE("one-fold Radon profiles") {
  CHECK(kernel_radon(abel_poisson(1e-8), 0.9) == doctest::Approx(1.0).epsilon(1e-6));
  // kappa=0.5, eta=pi/3: 0.9375 / 0.8125^{3/2}
  CHECK(kernel_radon(abel_poisson(0.5), kPi / 3) ==
        doctest::Approx(0.9375 / std::pow(0.8125, 1.5)).epsilon(1e-12));
  CHECK(kernel_radon(abel_poisson(0.5), kPi / 3) == doctest::Approx(1.2801).epsilon(1e-4));
  for (double k : {1.0, 4.0, 20.0})
    CHECK(kernel_radon(de_la_vallee_poussin(k), 0.0) == doctest::Approx(1.0 + k));
}

TEST_CASE("one-fold profile equals the circle quadrature of the kernel") {
  const CircleRule rule = build_circle_rule(256);
  for (const KernelSpec spec : {abel_poisson(0.3), abel_poisson(0.8), de_la_vallee_poussin(20)}) {
    for (int i = 0; i < 12; ++i) {
      const Dir3 h = rand_dir(), r = rand_dir();
      const GreatCircle c = fibre_circle(h, r);
      const double quad = mean_over(
          c,
          [&](const Quat& q) {
            return kernel_value(spec, 2.0 * std::acos(std::min(1.0, std::fabs(q.w))));
          },
          rule);
      CHECK(std::fabs(quad - kernel_radon(spec, angle_between(h, r))) < 1e-8);
    }
  }
}

TEST_CASE("twofold profile symmetry and reduction") {
  for (const KernelSpec spec : {abel_poisson(0.5), de_la_vallee_poussin(4)}) {
    CHECK(kernel_double_radon(spec, 0.7, 1.2) ==
          doctest::Approx(kernel_double_radon(spec, 1.2, 0.7)).epsilon(1e-12));
    for (double eta : {0.2, 1.0, 2.6})
      CHECK(std::fabs(kernel_double_radon(spec, eta, 0.0) - kernel_radon(spec, eta)) < 1e-8);
  }
}

TEST_CASE("twofold profile equals the Legendre series route") {
  std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
  for (const KernelSpec spec :
       {abel_poisson(0.3), abel_poisson(0.8), de_la_vallee_poussin(1), de_la_vallee_poussin(20)}) {
    for (int i = 0; i < 20; ++i) {
      const double e1 = u(rng), e2 = u(rng);
      CHECK(std::fabs(kernel_double_radon(spec, e1, e2) -
                      kernel_double_radon_series(spec, e1, e2)) < 1e-10);
    }
  }
  // non-integer dlVP kappa goes through the hypergeometric series
  const KernelSpec frac = de_la_vallee_poussin(3.7);
  for (int i = 0; i < 10; ++i) {
    const double e1 = u(rng), e2 = u(rng);
    const double p = 1.0 + std::cos(e1) * std::cos(e2);
    const double q = std::sin(e1) * std::sin(e2);
    double acc = 0.0;
    const int n = 20000;
    for (int j = 0; j < n; ++j) {
      const double t = kPi * (j + 0.5) / n;
      acc += std::pow(p + q * std::cos(t), 3.7);
    }
    const double oracle = (1.0 + 3.7) * std::pow(2.0, -3.7) * acc / n;
    CHECK(std::fabs(kernel_double_radon(frac, e1, e2) - oracle) < 1e-8);
  }
}

TEST_CASE("twofold profile equals the double circle quadrature") {
  // The Prop 2 oracle; also pins the elliptic-integral argument convention.
  const CircleRule rule = build_circle_rule(128);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (const KernelSpec spec :
       {abel_poisson(0.3), abel_poisson(0.5), abel_poisson(0.8), de_la_vallee_poussin(4)}) {
    for (int rep = 0; rep < 7; ++rep) {
      const Dir3 h1 = rand_dir(), r1 = rand_dir(), h2 = rand_dir(), r2 = rand_dir();
      const GreatCircle c1 = fibre_circle(h1, r1), c2 = fibre_circle(h2, r2);
      double acc = 0.0;
      for (double s : rule.angles) {
        const Quat p1c = circle_point(c1, s).conj();
        double inner = 0.0;
        for (double t : rule.angles) {
          const Quat p = p1c * circle_point(c2, t);
          inner += kernel_value(spec, 2.0 * std::acos(std::min(1.0, std::fabs(p.w))));
        }
        acc += inner * rule.weight;
      }
      acc *= rule.weight;
      const double closed =
          kernel_double_radon(spec, angle_between(h1, h2), angle_between(r1, r2));
      CHECK(std::fabs(acc - closed) < 1e-6);
    }
  }
}

TEST_CASE("kernel profiles are nonnegative") {
  for (const KernelSpec spec : {abel_poisson(0.6), de_la_vallee_poussin(3)}) {
    for (int i = 0; i <= 30; ++i) {
      CHECK(kernel_value(spec, 2 * kPi * i / 31.0) >= -1e-14);
      CHECK(kernel_radon(spec, kPi * i / 30.0) >= -1e-14);
      for (int j = 0; j <= 30; j += 5)
        CHECK(kernel_double_radon(spec, kPi * i / 30.0, kPi * j / 30.0) >= -1e-12);
    }
  }
}
