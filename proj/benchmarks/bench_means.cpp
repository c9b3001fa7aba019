#include <benchmark/benchmark.h>

#include "gini/means.hpp"
#include "gini/verify.hpp"

namespace {

const gini::EvalConfig cfg;

void BM_LnGini(benchmark::State& state) {
  const gini::PositivePair p(0.7, 6.3);
  double r = -4.0;
  for (auto _ : state) {
    r += 1e-9;
    benchmark::DoNotOptimize(gini::ln_gini({r, 2.5}, p, cfg));
  }
}
BENCHMARK(BM_LnGini);

void BM_LnGiniNearEqual(benchmark::State& state) {
  const gini::PositivePair p(0.7, 6.3);
  double r = 2.0;
  for (auto _ : state) {
    r += 1e-12;
    benchmark::DoNotOptimize(gini::ln_gini({r, r + 1e-10}, p, cfg));
  }
}
BENCHMARK(BM_LnGiniNearEqual);

void BM_HJet(benchmark::State& state) {
  const gini::PositivePair p(0.7, 6.3);
  double t = -8.0;
  for (auto _ : state) {
    t += 1e-9;
    benchmark::DoNotOptimize(gini::h_jet(t, {-1.0, 2.5}, p, cfg));
  }
}
BENCHMARK(BM_HJet);

void BM_KValue(benchmark::State& state) {
  const gini::PositivePair p(0.7, 6.3);
  double t = -8.0;
  for (auto _ : state) {
    t += 1e-9;
    benchmark::DoNotOptimize(gini::k_value(t, {-1.0, 2.5}, p, cfg));
  }
}
BENCHMARK(BM_KValue);

void BM_QuadratureOracle(benchmark::State& state) {
  const gini::PositivePair p(0.1, 100.0);
  double s = 10.0;
  for (auto _ : state) {
    s += 1e-9;
    benchmark::DoNotOptimize(gini::ln_gini_quadrature({-10.0, s}, p, cfg));
  }
}
BENCHMARK(BM_QuadratureOracle);

void BM_CheckThm2H(benchmark::State& state) {
  gini::ScanSpec spec;
  spec.grid_points_per_axis = 5;
  spec.random_samples = 200;
  const int threads = static_cast<int>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(gini::check_thm2_h(spec, cfg, threads));
  }
}
BENCHMARK(BM_CheckThm2H)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
