#include <benchmark/benchmark.h>

#include <vector>

#include "ruck/diagnostics.hpp"
#include "ruck/rng.hpp"

using namespace ruck;

namespace {

std::vector<std::vector<double>> synthetic_chains(std::size_t chains,
                                                  std::size_t draws,
                                                  double autocorr) {
  RngStream rng(9);
  std::vector<std::vector<double>> out(chains);
  for (auto& chain : out) {
    chain.resize(draws);
    chain[0] = rng.normal();
    for (std::size_t i = 1; i < draws; ++i) {
      chain[i] = autocorr * chain[i - 1] + rng.normal();
    }
  }
  return out;
}

}  // namespace

static void BM_SplitRhat(benchmark::State& state) {
  const auto chains = synthetic_chains(4, 1000, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(split_rhat(chains));
  }
}
BENCHMARK(BM_SplitRhat);

static void BM_EffectiveSampleSize(benchmark::State& state) {
  const auto chains =
      synthetic_chains(4, 1000, state.range(0) == 0 ? 0.0 : 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(effective_sample_size(chains));
  }
}
BENCHMARK(BM_EffectiveSampleSize)->Arg(0)->Arg(1);

BENCHMARK_MAIN();
