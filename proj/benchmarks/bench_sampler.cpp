#include <benchmark/benchmark.h>

#include <vector>

#include "bench_support.hpp"
#include "ruck/hmc.hpp"
#include "ruck/model.hpp"
#include "ruck/nuts.hpp"
#include "ruck/optimize.hpp"
#include "ruck/rng.hpp"

using namespace ruck;

namespace {

Target model_target(const Model& model) {
  return Target{
      model.dim(),
      [&model](std::span<const double> x) { return model.log_posterior(x); },
      [&model](std::span<const double> x, std::span<double> g) {
        model.gradient(x, g);
      }};
}

}  // namespace

static void BM_Leapfrog(benchmark::State& state) {
  const GameSet games = bench::season();
  const Model model(games, Hyperparams{});
  const Target target = model_target(model);
  const std::vector<double> start = map_estimate(games, Hyperparams{}).to_flat();
  RngStream rng(3);
  std::vector<double> momentum(target.dim);
  for (double& p : momentum) p = rng.normal();
  PhasePoint z = PhasePoint::at(target, start, momentum);
  for (auto _ : state) {
    leapfrog(target, z, 1e-4);
    benchmark::DoNotOptimize(z.position.data());
  }
}
BENCHMARK(BM_Leapfrog);

static void BM_NutsDraw(benchmark::State& state) {
  const GameSet games = bench::season();
  const Model model(games, Hyperparams{});
  const Target target = model_target(model);
  ChainState chain = ChainState::at(
      target, map_estimate(games, Hyperparams{}).to_flat(), RngStream(4, 0));
  const NutsControl control;
  for (auto _ : state) {
    benchmark::DoNotOptimize(nuts_draw(target, chain, 0.2, control));
  }
}
BENCHMARK(BM_NutsDraw);

static void BM_MapEstimate(benchmark::State& state) {
  const GameSet games = bench::season();
  for (auto _ : state) {
    benchmark::DoNotOptimize(map_estimate(games, Hyperparams{}, 1e-6, 20000));
  }
}
BENCHMARK(BM_MapEstimate);
