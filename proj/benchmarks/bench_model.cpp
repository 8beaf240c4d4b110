#include <benchmark/benchmark.h>

#include <vector>

#include "bench_support.hpp"
#include "ruck/model.hpp"
#include "ruck/rng.hpp"

using namespace ruck;

static void BM_LogPosterior(benchmark::State& state) {
  const GameSet games = bench::season();
  const Model model(games, Hyperparams{});
  RngStream rng(1);
  std::vector<double> x(model.dim());
  for (double& v : x) v = rng.normal();
  for (auto _ : state) {
    benchmark::DoNotOptimize(model.log_posterior(x));
  }
}
BENCHMARK(BM_LogPosterior);

static void BM_Gradient(benchmark::State& state) {
  const GameSet games = bench::season();
  const Model model(games, Hyperparams{});
  RngStream rng(2);
  std::vector<double> x(model.dim());
  for (double& v : x) v = rng.normal();
  std::vector<double> grad(model.dim());
  for (auto _ : state) {
    model.gradient(x, grad);
    benchmark::DoNotOptimize(grad.data());
  }
}
BENCHMARK(BM_Gradient);
