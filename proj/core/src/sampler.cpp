#include "ruck/sampler.hpp"

#include <cmath>
#include <exception>
#include <string>
#include <thread>
#include <utility>

#include "ruck/errors.hpp"
#include "ruck/optimize.hpp"

namespace ruck {

namespace {
constexpr double kStepFloor = 1e-10;
constexpr double kJitterScale = 0.1;
}  // namespace

void SamplerConfig::validate() const {
  if (chains < 1) throw ValidationError("chains must be >= 1");
  if (warmup < 0) throw ValidationError("warmup must be >= 0");
  if (draws < 1) throw ValidationError("draws must be >= 1");
  if (!(target_accept > 0.0 && target_accept < 1.0)) {
    throw ValidationError("target_accept must lie in (0, 1)");
  }
  if (max_tree_depth < 1) throw ValidationError("max_tree_depth must be >= 1");
  if (!(divergence_threshold > 0.0)) {
    throw ValidationError("divergence_threshold must be positive");
  }
}

ChainRun sample_chain(const Target& target, std::span<const double> init,
                      const SamplerConfig& config, RngStream rng) {
  config.validate();
  ChainState state =
      ChainState::at(target, {init.begin(), init.end()}, std::move(rng));
  if (!std::isfinite(state.log_prob)) {
    throw SamplerError("chain initialized at a state of zero density");
  }

  const NutsControl control{config.max_tree_depth,
                            config.divergence_threshold};
  const double initial_step = find_initial_step(target, state.position,
                                                state.rng);
  DualAveraging averager(initial_step, config.target_accept);

  for (int m = 0; m < config.warmup; ++m) {
    const double step = averager.current();
    if (step < kStepFloor) {
      throw SamplerError("step size underflow at warmup iteration " +
                         std::to_string(m));
    }
    const DrawStats stats = nuts_draw(target, state, step, control);
    averager.update(stats.accept_stat);
  }

  const double step =
      (config.warmup > 0) ? averager.averaged() : initial_step;
  if (step < kStepFloor) {
    throw SamplerError("adapted step size underflowed");
  }

  ChainRun run;
  run.step_size = step;
  run.draws.reserve(static_cast<std::size_t>(config.draws) * target.dim);
  run.log_probs.reserve(config.draws);
  run.divergent.reserve(config.draws);
  run.tree_depth.reserve(config.draws);
  double accept_sum = 0.0;
  for (int i = 0; i < config.draws; ++i) {
    const DrawStats stats = nuts_draw(target, state, step, control);
    run.draws.insert(run.draws.end(), state.position.begin(),
                     state.position.end());
    run.log_probs.push_back(state.log_prob);
    run.divergent.push_back(stats.divergent ? 1 : 0);
    run.tree_depth.push_back(stats.tree_depth);
    accept_sum += stats.accept_stat;
  }
  run.accept_mean = accept_sum / config.draws;
  return run;
}

Trace run_chains(const GameSet& games, const Hyperparams& hp,
                 const SamplerConfig& config) {
  config.validate();
  if (games.games.empty() || games.teams.size() < 2) {
    throw ValidationError("need at least one game between two teams");
  }

  const Model model(games, hp);
  const Target target{
      model.dim(),
      [&model](std::span<const double> x) { return model.log_posterior(x); },
      [&model](std::span<const double> x, std::span<double> g) {
        model.gradient(x, g);
      }};

  const std::vector<double> map_point =
      map_estimate(games, hp, 1e-8, 50000).to_flat();

  const std::size_t chains = static_cast<std::size_t>(config.chains);
  std::vector<ChainRun> runs(chains);
  std::vector<std::exception_ptr> failures(chains);

  const auto worker = [&](std::size_t c) {
    try {
      RngStream rng(config.seed, c);
      std::vector<double> init = map_point;
      for (double& v : init) v += kJitterScale * rng.normal();
      runs[c] = sample_chain(target, init, config, std::move(rng));
    } catch (...) {
      failures[c] = std::current_exception();
    }
  };

  std::vector<std::thread> threads;
  threads.reserve(chains);
  for (std::size_t c = 0; c < chains; ++c) threads.emplace_back(worker, c);
  for (auto& t : threads) t.join();
  for (const auto& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  // Assemble the trace: raw coordinates, derived centered effects, lp.
  const std::size_t t = model.team_count();
  Trace trace;
  trace.columns.reserve(4 * t + 7);
  trace.columns.emplace_back("intercept");
  trace.columns.emplace_back("home");
  for (std::size_t i = 0; i < t; ++i) {
    trace.columns.push_back("att_raw_" + games.teams.name(i));
  }
  for (std::size_t i = 0; i < t; ++i) {
    trace.columns.push_back("def_raw_" + games.teams.name(i));
  }
  trace.columns.emplace_back("log_tau_att");
  trace.columns.emplace_back("log_tau_def");
  for (std::size_t i = 0; i < t; ++i) {
    trace.columns.push_back("att_" + games.teams.name(i));
  }
  for (std::size_t i = 0; i < t; ++i) {
    trace.columns.push_back("def_" + games.teams.name(i));
  }
  trace.columns.emplace_back("tau_att");
  trace.columns.emplace_back("tau_def");
  trace.columns.emplace_back("lp");

  trace.chain_count = chains;
  trace.draws_per_chain = static_cast<std::size_t>(config.draws);
  trace.values.reserve(trace.total_draws() * trace.columns.size());
  const std::size_t dim = model.dim();
  for (std::size_t c = 0; c < chains; ++c) {
    const ChainRun& run = runs[c];
    for (std::size_t d = 0; d < trace.draws_per_chain; ++d) {
      const double* x = run.draws.data() + d * dim;
      for (std::size_t k = 0; k < dim; ++k) trace.values.push_back(x[k]);

      const std::span<const double> att_raw(x + 2, t);
      const std::span<const double> def_raw(x + 2 + t, t);
      double att_mean = 0.0;
      double def_mean = 0.0;
      for (std::size_t i = 0; i < t; ++i) {
        att_mean += att_raw[i];
        def_mean += def_raw[i];
      }
      att_mean /= static_cast<double>(t);
      def_mean /= static_cast<double>(t);
      for (std::size_t i = 0; i < t; ++i) {
        trace.values.push_back(att_raw[i] - att_mean);
      }
      for (std::size_t i = 0; i < t; ++i) {
        trace.values.push_back(def_raw[i] - def_mean);
      }
      trace.values.push_back(std::exp(x[2 + 2 * t]));
      trace.values.push_back(std::exp(x[3 + 2 * t]));
      trace.values.push_back(run.log_probs[d]);
    }
    trace.divergent.insert(trace.divergent.end(), run.divergent.begin(),
                           run.divergent.end());
    trace.tree_depth.insert(trace.tree_depth.end(), run.tree_depth.begin(),
                            run.tree_depth.end());
    trace.accept_mean.push_back(run.accept_mean);
  }
  return trace;
}

}  // namespace ruck
