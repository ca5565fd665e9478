#include <benchmark/benchmark.h>

#include <random>

#include "s3radon/harmonics.hpp"
#include "s3radon/kernels.hpp"
#include "s3radon/reconstruction.hpp"
#include "s3radon/transforms.hpp"

using namespace s3radon;

namespace {

Quat seeded_quat(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return normalized(Quat{g(rng), g(rng), g(rng), g(rng)});
}

Dir3 seeded_dir(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return normalized(g(rng), g(rng), g(rng));
}

OdfEvaluator bench_model() {
  std::mt19937_64 rng(17);
  const Quat q0 = seeded_quat(rng);
  const Quat q1 = seeded_quat(rng);
  const double norm = beta_fn(1.5, 0.5) / beta_fn(1.5, 4.5);
  return OdfEvaluator{[=](const Quat& q) {
                        auto pow8 = [](double x) {
                          const double c2 = x * x;
                          const double c4 = c2 * c2;
                          return c4 * c4;
                        };
                        return norm * (0.6 * pow8(dot(q0, q)) + 0.4 * pow8(dot(q1, q)));
                      },
                      true};
}

void BM_Radon(benchmark::State& state) {
  const OdfEvaluator f = bench_model();
  const TransformRules rules = TransformRules::make(static_cast<int>(state.range(0)), 8, 16);
  std::mt19937_64 rng(3);
  const GreatCircle c = fibre_circle(seeded_dir(rng), seeded_dir(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(radon(f, c, rules));
  }
}
BENCHMARK(BM_Radon)->Arg(64)->Arg(256)->Arg(1024);

void BM_GeneralizedRadon(benchmark::State& state) {
  const OdfEvaluator f = bench_model();
  const int n = static_cast<int>(state.range(0));
  const TransformRules rules = TransformRules::make(64, 8, n);
  std::mt19937_64 rng(3);
  const GreatCircle c = fibre_circle(seeded_dir(rng), seeded_dir(rng));
  for (auto _ : state) {
    benchmark::DoNotOptimize(generalized_radon(f, c, 0.9, rules));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_GeneralizedRadon)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_AngleDensity(benchmark::State& state) {
  const OdfEvaluator f = bench_model();
  const TransformRules rules = TransformRules::make(static_cast<int>(state.range(0)), 8, 16);
  std::mt19937_64 rng(5);
  const Dir3 h = seeded_dir(rng), r = seeded_dir(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(angle_density(f, h, r, 0.8, rules));
  }
}
BENCHMARK(BM_AngleDensity)->Arg(32)->Arg(64);

void BM_KernelDoubleRadon(benchmark::State& state) {
  const KernelSpec spec = state.range(0) == 0 ? abel_poisson(0.5) : de_la_vallee_poussin(20);
  double e1 = 0.3;
  for (auto _ : state) {
    e1 = e1 < 2.8 ? e1 + 1e-6 : 0.3;
    benchmark::DoNotOptimize(kernel_double_radon(spec, e1, 1.1));
  }
}
BENCHMARK(BM_KernelDoubleRadon)->Arg(0)->Arg(1);

void BM_WSeries(benchmark::State& state) {
  const int lmax = static_cast<int>(state.range(0));
  CoeffTable table(lmax);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int l = 0; l <= lmax; l += 2)
    for (int m = -l; m <= l; ++m)
      for (int n = -l; n <= l; ++n) table.set(l, m, n, u(rng));
  const Dir3 h = seeded_dir(rng), r = seeded_dir(rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w_series(table, h, r, 0.7));
  }
}
BENCHMARK(BM_WSeries)->Arg(4)->Arg(8)->Arg(16);

void BM_FitHarmonic(benchmark::State& state) {
  const KernelSpec spec = de_la_vallee_poussin(4);
  std::mt19937_64 rng(21);
  const RbfMixture model{{RbfComponent{seeded_quat(rng), 1.0, spec}}};
  const DesignGrid design = DesignGrid::random(400, 9, 0.05, kPi - 0.05);
  const auto samples = synthesize_samples(model, design, 0.0, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(fit_harmonic(samples, 4, 0.0));
  }
}
BENCHMARK(BM_FitHarmonic);

}  // namespace

BENCHMARK_MAIN();
