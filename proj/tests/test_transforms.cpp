#include <doctest.h>

#include <cmath>
#include <random>

#include "s3radon/harmonics.hpp"
#include "s3radon/kernels.hpp"
#include "s3radon/reconstruction.hpp"
#include "s3radon/transforms.hpp"

using namespace s3radon;

namespace {
std::mt19937_64 rng(31337);
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

OdfEvaluator dlvp_at(const Quat& q0, double kappa) {
  const double norm = beta_fn(1.5, 0.5) / beta_fn(1.5, kappa + 0.5);
  const int ik = static_cast<int>(kappa);
  return OdfEvaluator{[q0, norm, ik](const Quat& q) {
                        const double x = dot(q0, q);
                        double p = 1.0;
                        const double c2 = x * x;
                        for (int i = 0; i < ik; ++i) p *= c2;
                        return norm * p;
                      },
                      true};
}

const OdfEvaluator kOne{[](const Quat&) { return 1.0; }, true};

}  // namespace

TEST_CASE("radon of constants, odd functions, and kernels") {
  const TransformRules rules = TransformRules::make(64, 8, 32);
  const GreatCircle c = fibre_circle(rand_dir(), rand_dir());
  CHECK(radon(kOne, c, rules) == doctest::Approx(1.0).epsilon(1e-14));
  const OdfEvaluator odd{[](const Quat& q) { return q.w; }, false};
  CHECK(std::fabs(radon(odd, c, rules)) < 1e-12);

  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  const KernelSpec spec = de_la_vallee_poussin(4);
  for (int rep = 0; rep < 10; ++rep) {
    const Dir3 h = rand_dir(), r = rand_dir();
    const double eta = angle_between(rotate3(q0, h), r);
    CHECK(std::fabs(radon(f, fibre_circle(h, r), rules) - kernel_radon(spec, eta)) < 1e-8);
  }
}

TEST_CASE("radon respects the antipodal witness equivalence") {
  const TransformRules rules = TransformRules::make(64, 8, 32);
  const OdfEvaluator f = dlvp_at(rand_quat(), 4.0);
  const Dir3 h = rand_dir(), r = rand_dir();
  CHECK(radon(f, fibre_circle(h, r), rules) ==
        doctest::Approx(radon(f, fibre_circle(-h, -r), rules)).epsilon(1e-12));
}

TEST_CASE("xray transform symmetry and closed form") {
  const TransformRules rules = TransformRules::make(64, 8, 32);
  const Dir3 h = rand_dir(), r = rand_dir();
  CHECK(xray(kOne, h, r, rules) == doctest::Approx(1.0).epsilon(1e-14));
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  CHECK(xray(f, h, r, rules) == doctest::Approx(xray(f, -h, r, rules)).epsilon(1e-15));
  CHECK(xray(f, h, r, rules) == doctest::Approx(xray(f, h, -r, rules)).epsilon(1e-12));
  const KernelSpec spec = de_la_vallee_poussin(4);
  const double ce = dot(rotate3(q0, h), r);
  const double expect = 0.5 * (kernel_radon(spec, std::acos(std::min(1.0, ce))) +
                               kernel_radon(spec, std::acos(std::max(-1.0, -ce))));
  CHECK(xray(f, h, r, rules) == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("generalized radon degenerates to radon and matches the twofold profile") {
  const TransformRules rules = TransformRules::make(64, 8, 64);
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  const Dir3 h = rand_dir(), r = rand_dir();
  const GreatCircle c = fibre_circle(h, r);
  CHECK(generalized_radon(kOne, c, 1.3, rules) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(generalized_radon(f, c, 0.0, rules) ==
        doctest::Approx(radon(f, c, rules)).epsilon(1e-12));
  CHECK_THROWS_AS(generalized_radon(f, c, 4.0, rules), std::invalid_argument);

  // Abel-Poisson probe against the twofold-transform closed form.
  const KernelSpec ap = abel_poisson(0.5);
  const RbfMixture m{{RbfComponent{q0, 1.0, ap}}};
  const OdfEvaluator g{[&](const Quat& q) { return evaluate_odf(m, q); }, true};
  const TransformRules fine = TransformRules::make(128, 8, 128);
  std::uniform_real_distribution<double> u(0.1, kPi - 0.1);
  for (int rep = 0; rep < 3; ++rep) {
    const double rho = u(rng);
    const double eta1 = angle_between(rotate3(q0, h), r);
    CHECK(std::fabs(generalized_radon(g, c, rho, fine) - kernel_double_radon(ap, eta1, rho)) <
          1e-6);
  }
}

TEST_CASE("spherical translation on S2") {
  const TransformRules rules = TransformRules::make(64, 8, 32);
  const Dir3 r = rand_dir();
  CHECK(translate_sphere_fn([](const Dir3&) { return 3.5; }, r, 0.9, rules) ==
        doctest::Approx(3.5).epsilon(1e-14));
  // Funk-Hecke through the S2 translation.
  std::uniform_real_distribution<double> u(0.05, kPi - 0.05);
  for (int l : {1, 3, 6}) {
    const double rho = u(rng);
    const int n = l - 1;
    const double got =
        translate_sphere_fn([&](const Dir3& d) { return sph_harm(l, n, d); }, r, rho, rules);
    CHECK(std::fabs(got - legendre(l, std::cos(rho)) * sph_harm(l, n, r)) < 1e-10);
  }
  const auto F = [](const Dir3& d) { return d.x + 0.2 * d.y * d.z; };
  CHECK(translate_sphere_fn(F, r, kPi, rules) == doctest::Approx(F(-r)).epsilon(1e-12));
  CHECK(translate_sphere_fn(F, r, 0.0, rules) == doctest::Approx(F(r)).epsilon(1e-14));
}

TEST_CASE("angle density endpoints and the Prop 1 equivalence") {
  const TransformRules rules = TransformRules::make(64, 8, 64);
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  const Dir3 h = rand_dir(), r = rand_dir();
  CHECK(angle_density(kOne, h, r, 0.77, rules) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::fabs(angle_density(f, h, r, 0.0, rules) - radon(f, fibre_circle(h, r), rules)) <
        1e-10);
  CHECK(std::fabs(angle_density(f, h, r, kPi, rules) - radon(f, fibre_circle(h, -r), rules)) <
        1e-10);
  std::uniform_real_distribution<double> u(0.1, kPi - 0.1);
  for (int rep = 0; rep < 10; ++rep) {
    const double rho = u(rng);
    CHECK(std::fabs(angle_density(f, h, r, rho, rules) -
                    generalized_radon(f, fibre_circle(h, r), rho, rules)) < 1e-6);
  }
}

TEST_CASE("w transform is the Friedel-symmetrized angle density") {
  const TransformRules rules = TransformRules::make(64, 8, 32);
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  const Dir3 h = rand_dir(), r = rand_dir();
  CHECK(w_transform(kOne, h, r, 0.4, rules) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(std::fabs(w_transform(f, h, r, 0.0, rules) - xray(f, h, r, rules)) < 1e-10);
  const RbfMixture m{{RbfComponent{q0, 1.0, de_la_vallee_poussin(4)}}};
  std::uniform_real_distribution<double> u(0.1, kPi - 0.1);
  for (int rep = 0; rep < 5; ++rep) {
    const double rho = u(rng);
    CHECK(std::fabs(w_transform(f, h, r, rho, rules) - forward_w_rbf(m, h, r, rho)) < 1e-6);
  }
}

TEST_CASE("dual radon transform") {
  const TransformRules rules = TransformRules::make(64, 16, 32);
  const CircleFunction one{[](const Dir3&, const Dir3&) { return 1.0; }};
  CHECK(dual_radon(one, rand_quat(), rules) == doctest::Approx(1.0).epsilon(1e-13));
  // phi(h, r) = h . r sampled at the identity sees only incident circles.
  const CircleFunction dot_phi{[](const Dir3& h, const Dir3& r) { return dot(h, r); }};
  CHECK(dual_radon(dot_phi, quat_e0(), rules) == doctest::Approx(1.0).epsilon(1e-13));
  // A central function's radon transform is constant over circles through its
  // centre.
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  const KernelSpec spec = de_la_vallee_poussin(4);
  const CircleFunction phi{
      [&](const Dir3& h, const Dir3& r) { return radon(f, fibre_circle(h, r), rules); }};
  CHECK(std::fabs(dual_radon(phi, q0, rules) - kernel_radon(spec, 0.0)) < 1e-8);
}

TEST_CASE("generalized dual radon samples rho-incident circles") {
  const TransformRules rules = TransformRules::make(32, 8, 16);
  const CircleFunction one{[](const Dir3&, const Dir3&) { return 1.0; }};
  const Quat q = rand_quat();
  CHECK(generalized_dual_radon(one, q, 0.6, rules) == doctest::Approx(1.0).epsilon(1e-13));
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  const CircleFunction phi{
      [&](const Dir3& h, const Dir3& r) { return radon(f, fibre_circle(h, r), rules); }};
  CHECK(std::fabs(generalized_dual_radon(phi, q, 0.0, rules) - dual_radon(phi, q, rules)) <
        1e-10);
  // every sampled circle is rho-incident with q
  double worst = 0.0;
  const double rho = 0.4;
  const CircleFunction probe{[&](const Dir3& h, const Dir3& r) {
    worst = std::max(worst, std::fabs(dist_point_circle(q, fibre_circle(h, r)) - rho));
    return 0.0;
  }};
  generalized_dual_radon(probe, q, rho, rules);
  CHECK(worst < 1e-9);
  // central-function remark: the dual of the radon image at distance rho from
  // the centre equals the radon value on any single rho-incident circle.
  const KernelSpec spec = de_la_vallee_poussin(4);
  const GreatCircle c = circle_at_distance(q0, rho);
  CHECK(std::fabs(generalized_dual_radon(phi, q0, rho, rules) -
                  kernel_radon(spec, 2.0 * rho)) < 1e-6);
  CHECK(std::fabs(radon(f, c, rules) - kernel_radon(spec, 2.0 * rho)) < 1e-8);
  CHECK_THROWS_AS(generalized_dual_radon(one, q, kPi / 2, rules), std::invalid_argument);
}

TEST_CASE("spherical translation on S3") {
  const TransformRules rules = TransformRules::make(32, 16, 16);
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  const KernelSpec spec = de_la_vallee_poussin(4);
  CHECK(translate_s3(kOne, rand_quat(), 0.8, rules) == doctest::Approx(1.0).epsilon(1e-14));
  const Quat q = rand_quat();
  CHECK(translate_s3(f, q, 0.0, rules) == doctest::Approx(f(q)).epsilon(1e-14));
  // at the centre, the translation reads off the kernel profile at 2 rho
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int rep = 0; rep < 10; ++rep) {
    const double rho = u(rng);
    CHECK(std::fabs(translate_s3(f, q0, rho, rules) - kernel_value(spec, 2.0 * rho)) < 1e-10);
  }
}

TEST_CASE("translated fibre average agrees with the generalized dual route") {
  const TransformRules rules = TransformRules::make(64, 16, 32);
  CHECK(translated_fibre_average(kOne, rand_quat(), 0.7, rules) ==
        doctest::Approx(1.0).epsilon(1e-13));
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  // central reduction: the average over the circle of the translated profile
  const double rho = 0.5;
  const GreatCircle c0 = circle_at_distance(q0, rho);
  double direct = 0.0;
  const CircleRule rule = build_circle_rule(64);
  const KernelSpec spec = de_la_vallee_poussin(4);
  for (double t : rule.angles) {
    const Quat p = circle_point(c0, t);
    const double d = std::acos(std::min(1.0, std::fabs(dot(q0, p))));
    direct += kernel_value(spec, 2.0 * d);
  }
  direct *= rule.weight;
  CHECK(std::fabs(translated_fibre_average(f, q0, rho, rules) - direct) < 1e-8);

  const OdfEvaluator mix = dlvp_at(rand_quat(), 4.0);
  const CircleFunction phi{
      [&](const Dir3& h, const Dir3& r) { return radon(mix, fibre_circle(h, r), rules); }};
  std::uniform_real_distribution<double> u(0.05, kPi / 2 - 0.1);
  for (int rep = 0; rep < 3; ++rep) {
    const Quat q = rand_quat();
    const double d = u(rng);
    CHECK(std::fabs(translated_fibre_average(mix, q, d, rules) -
                    generalized_dual_radon(phi, q, d, rules)) < 1e-5);
  }
}

TEST_CASE("abel reconstruction of constants and a central peak") {
  const TransformRules tiny = TransformRules::make(16, 8, 16);
  CHECK(std::fabs(abel_reconstruct(kOne, rand_quat(), 128, tiny) - 1.0) < 1e-8);
  const Quat q0 = rand_quat();
  const OdfEvaluator f = dlvp_at(q0, 4.0);
  const TransformRules rules = TransformRules::make(24, 16, 24);
  const double peak = kernel_value(de_la_vallee_poussin(4), 0.0);
  CHECK(std::fabs(abel_reconstruct(f, q0, 512, rules) - peak) / peak < 2e-2);
  CHECK_THROWS_AS(abel_reconstruct(f, q0, 16, rules), std::invalid_argument);
  const OdfEvaluator not_even{[](const Quat& q) { return q.w; }, false};
  CHECK_THROWS_AS(abel_reconstruct(not_even, q0, 128, rules), std::invalid_argument);
}

TEST_CASE("asgeirsson identity for a smooth model") {
  const TransformRules rules = TransformRules::make(48, 8, 32);
  const OdfEvaluator f = dlvp_at(rand_quat(), 4.0);
  std::uniform_real_distribution<double> u(0.1, kPi - 0.1);
  for (int rep = 0; rep < 5; ++rep) {
    const Dir3 h = rand_dir(), r = rand_dir();
    const double rho = u(rng);
    const double lhs = translate_sphere_fn(
        [&](const Dir3& hp) { return radon(f, fibre_circle(hp, r), rules); }, h, rho, rules);
    const double rhs = translate_sphere_fn(
        [&](const Dir3& rp) { return radon(f, fibre_circle(h, rp), rules); }, r, rho, rules);
    CHECK(std::fabs(lhs - rhs) < 1e-8);
  }
}
