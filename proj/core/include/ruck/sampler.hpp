#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "ruck/games.hpp"
#include "ruck/hmc.hpp"
#include "ruck/model.hpp"
#include "ruck/nuts.hpp"
#include "ruck/trace.hpp"

namespace ruck {

struct SamplerConfig {
  int chains = 4;
  int warmup = 500;
  int draws = 1000;
  std::uint64_t seed = 0;
  double target_accept = 0.8;
  int max_tree_depth = 10;
  double divergence_threshold = 1000.0;

  void validate() const;  // throws ValidationError on out-of-range fields
};

/// Raw output of one chain's post-warmup phase.
struct ChainRun {
  std::vector<double> draws;  // draws x dim, row major
  std::vector<double> log_probs;
  std::vector<std::uint8_t> divergent;
  std::vector<int> tree_depth;
  double accept_mean = 0.0;
  double step_size = 0.0;
};

/// Warmup (initial step search plus dual averaging toward target_accept,
/// draws discarded) followed by `draws` recorded transitions at the frozen
/// averaged step size. Throws SamplerError if the step size underflows.
ChainRun sample_chain(const Target& target, std::span<const double> init,
                      const SamplerConfig& config, RngStream rng);

/// Full fit of the scoring model. Each chain starts at the MAP point with
/// every coordinate jittered by 0.1 times a standard normal from the
/// chain's own stream; chain c's stream is derived from (seed, c). Chains
/// run on worker threads and are merged in chain order, so the result is
/// identical whether they run sequentially or in parallel.
Trace run_chains(const GameSet& games, const Hyperparams& hp,
                 const SamplerConfig& config);

}  // namespace ruck
