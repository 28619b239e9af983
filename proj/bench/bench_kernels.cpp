// Serial reference vs OpenMP kernels. Arg 0 is the serial path, 1 parallel.

#include "lo2d/manybody.hpp"
#include "lo2d/stability.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace lo2d;

namespace {

Execution mode(const benchmark::State &state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

void label(benchmark::State &state) {
  state.SetLabel(state.range(0) == 0 ? "serial" : "parallel");
}

void BM_PairRepulsionMonteCarlo(benchmark::State &state) {
  const auto spec =
      WaveFunctionSpec::shifted_mixture(5, 1.0, {{-1.0, 0.0}, {1.0, 0.0}, {0.0, 1.5}}, 3);
  for (auto _ : state) {
    benchmark::DoNotOptimize(pair_repulsion_monte_carlo(spec, 200'000, mode(state)));
  }
  state.SetItemsProcessed(state.iterations() * 200'000);
  label(state);
}

void BM_TightnessScan(benchmark::State &state) {
  std::vector<WaveFunctionSpec> specs;
  for (int n : {2, 3, 5, 10}) {
    specs.push_back(WaveFunctionSpec::gaussian_product(n, 1.0));
  }
  specs.push_back(WaveFunctionSpec::shifted_mixture(3, 1.0, {{-1.0, 0.0}, {1.0, 0.0}}, 9));
  const std::vector<double> gammas{1.001, 1.4, 1.8, 2.0, 2.4, 2.8};
  const std::vector<double> eps{0.05, 0.2, 0.5, 1.0, 2.0, 5.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(tightness_scan(specs, gammas, eps, 100'000, mode(state)));
  }
  label(state);
}

void BM_StabilitySweep(benchmark::State &state) {
  const auto p = derive_parameters(2.0, 1.0);
  std::vector<DensityProfile> corpus;
  for (double a : {0.2, 1.0, 5.0}) {
    corpus.push_back(DensityProfile::gaussian(a / std::numbers::pi, a));
    corpus.push_back(DensityProfile::exponential(a, 1.0 + a));
  }
  corpus.push_back(DensityProfile::mixture({{0.6, 1.0, {-1.0, 0.0}}, {0.6, 1.0, {1.0, 0.0}}}));
  const std::vector<MolecularConfig> configs = {
      MolecularConfig::create(1.0, {{0.0, 0.0}}),
      MolecularConfig::create(1.0, {{-1.0, 0.0}, {1.0, 0.0}}),
  };
  for (auto _ : state) {
    benchmark::DoNotOptimize(empirical_stability_sweep(corpus, configs, p, a_tilde_squared(p),
                                                       b_tilde_squared(1.0), mode(state)));
  }
  label(state);
}

} // namespace

BENCHMARK(BM_PairRepulsionMonteCarlo)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TightnessScan)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_StabilitySweep)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
