#include <doctest.h>

#include <cmath>
#include <vector>

#include "ruck/diagnostics.hpp"
#include "ruck/nuts.hpp"
#include "ruck/rng.hpp"
#include "ruck/sampler.hpp"
#include "support/paper_data.hpp"

using namespace ruck;

namespace {

Target diagonal_normal(std::vector<double> variances) {
  const auto var = std::make_shared<std::vector<double>>(std::move(variances));
  return Target{var->size(),
                [var](std::span<const double> q) {
                  double s = 0.0;
                  for (std::size_t i = 0; i < q.size(); ++i) {
                    s += q[i] * q[i] / (*var)[i];
                  }
                  return -0.5 * s;
                },
                [var](std::span<const double> q, std::span<double> g) {
                  for (std::size_t i = 0; i < q.size(); ++i) {
                    g[i] = -q[i] / (*var)[i];
                  }
                }};
}

struct MomentCheck {
  double mean = 0.0;
  double variance = 0.0;
  double mcse = 0.0;
};

/// Runs `chains` NUTS chains on `target` and returns per-coordinate sample
/// moments with a Monte Carlo standard error from the ESS estimate.
std::vector<MomentCheck> run_moments(const Target& target, int chains,
                                     int draws, int warmup,
                                     std::uint64_t seed) {
  SamplerConfig config;
  config.chains = chains;
  config.warmup = warmup;
  config.draws = draws;
  config.seed = seed;

  std::vector<ChainRun> runs;
  for (int c = 0; c < chains; ++c) {
    RngStream rng(seed, static_cast<std::uint64_t>(c));
    std::vector<double> init(target.dim);
    for (double& v : init) v = 0.1 * rng.normal();
    runs.push_back(sample_chain(target, init, config, std::move(rng)));
  }

  std::vector<MomentCheck> out(target.dim);
  const double total = static_cast<double>(chains) * draws;
  for (std::size_t i = 0; i < target.dim; ++i) {
    std::vector<std::vector<double>> per_chain;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& run : runs) {
      std::vector<double> column;
      column.reserve(draws);
      for (int d = 0; d < draws; ++d) {
        const double v = run.draws[static_cast<std::size_t>(d) * target.dim + i];
        column.push_back(v);
        sum += v;
        sum_sq += v * v;
      }
      per_chain.push_back(std::move(column));
    }
    const double mean = sum / total;
    const double variance = sum_sq / total - mean * mean;
    const double ess = effective_sample_size(per_chain).value_or(1.0);
    out[i] = MomentCheck{mean, variance, std::sqrt(variance / ess)};
  }
  return out;
}

}  // namespace

TEST_CASE("nuts recovers a standard normal") {
  const Target target = diagonal_normal({1.0});
  const auto moments = run_moments(target, 2, 5000, 300, 71);
  CHECK(std::abs(moments[0].mean) < 4.0 * moments[0].mcse);
  CHECK(moments[0].variance > 0.9);
  CHECK(moments[0].variance < 1.1);
}

TEST_CASE("nuts handles mismatched scales") {
  const Target target = diagonal_normal({1.0, 100.0});
  const auto moments = run_moments(target, 2, 5000, 500, 72);
  CHECK(std::abs(moments[0].mean) < 4.0 * moments[0].mcse);
  CHECK(std::abs(moments[1].mean) < 4.0 * moments[1].mcse);
  CHECK(std::abs(moments[0].variance - 1.0) < 0.15);
  CHECK(std::abs(moments[1].variance - 100.0) < 15.0);
}

TEST_CASE("tiny steps from the mode accept everything") {
  const Target target = diagonal_normal({1.0, 1.0});
  ChainState state = ChainState::at(target, {0.0, 0.0}, RngStream(5, 0));
  const NutsControl control;
  double min_accept = 1.0;
  for (int i = 0; i < 20; ++i) {
    const DrawStats stats = nuts_draw(target, state, 1e-3, control);
    min_accept = std::min(min_accept, stats.accept_stat);
  }
  CHECK(min_accept > 0.999);
}

TEST_CASE("max tree depth caps the trajectory") {
  const Target target = diagonal_normal({1.0});
  ChainState state = ChainState::at(target, {0.0}, RngStream(6, 0));
  NutsControl control;
  control.max_tree_depth = 3;
  for (int i = 0; i < 50; ++i) {
    const DrawStats stats = nuts_draw(target, state, 1e-4, control);
    CHECK(stats.tree_depth <= 3);
  }
}

TEST_CASE("gaussian targets do not diverge") {
  const Target target = diagonal_normal({1.0, 1.0, 1.0});
  SamplerConfig config;
  config.chains = 1;
  config.warmup = 200;
  config.draws = 500;
  const ChainRun run =
      sample_chain(target, std::vector<double>(3, 0.0), config, RngStream(9, 0));
  std::size_t divergences = 0;
  for (auto flag : run.divergent) divergences += flag;
  CHECK(divergences == 0);
  CHECK(run.accept_mean > 0.6);
  CHECK(run.step_size > 0.0);
}

TEST_CASE("sample_chain is deterministic in the stream") {
  const Target target = diagonal_normal({1.0, 4.0});
  SamplerConfig config;
  config.chains = 1;
  config.warmup = 100;
  config.draws = 100;
  const std::vector<double> init{0.2, -0.3};
  const ChainRun a = sample_chain(target, init, config, RngStream(33, 2));
  const ChainRun b = sample_chain(target, init, config, RngStream(33, 2));
  CHECK(a.draws == b.draws);
  CHECK(a.step_size == b.step_size);
  const ChainRun c = sample_chain(target, init, config, RngStream(33, 3));
  CHECK(a.draws != c.draws);
}

TEST_CASE("posterior means agree across seeds within Monte Carlo error") {
  const GameSet games = testing::six_nations();
  SamplerConfig config;
  config.chains = 2;
  config.warmup = 300;
  config.draws = 400;

  config.seed = 1001;
  const Trace first = run_chains(games, Hyperparams{}, config);
  config.seed = 2002;
  const Trace second = run_chains(games, Hyperparams{}, config);

  for (const std::string column : {"home", "intercept", "att_Wales"}) {
    const auto mean_and_mcse = [&](const Trace& trace) {
      const auto pooled = trace.column(column);
      double sum = 0.0;
      double sum_sq = 0.0;
      for (double v : pooled) {
        sum += v;
        sum_sq += v * v;
      }
      const double mean = sum / static_cast<double>(pooled.size());
      const double var = sum_sq / static_cast<double>(pooled.size()) - mean * mean;
      const double ess =
          effective_sample_size(trace.column_by_chain(column)).value_or(1.0);
      return std::pair<double, double>{mean, std::sqrt(var / ess)};
    };
    const auto [mean_a, mcse_a] = mean_and_mcse(first);
    const auto [mean_b, mcse_b] = mean_and_mcse(second);
    const double budget =
        3.0 * std::sqrt(mcse_a * mcse_a + mcse_b * mcse_b);
    CHECK(std::abs(mean_a - mean_b) < budget);
  }
}
