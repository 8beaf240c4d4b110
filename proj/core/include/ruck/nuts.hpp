#pragma once

#include <vector>

#include "ruck/hmc.hpp"
#include "ruck/rng.hpp"

namespace ruck {

struct NutsControl {
  int max_tree_depth = 10;
  double divergence_threshold = 1000.0;
};

/// Everything a transition reports besides the new position.
struct DrawStats {
  double accept_stat = 0.0;  // mean acceptance statistic over the trajectory
  int tree_depth = 0;        // number of doublings performed
  bool divergent = false;
};

/// Per-chain sampler state: current position with cached density and
/// gradient, plus the chain's private random stream.
struct ChainState {
  std::vector<double> position;
  double log_prob = 0.0;
  std::vector<double> gradient;
  RngStream rng;

  static ChainState at(const Target& target, std::vector<double> position,
                       RngStream rng);
};

/// One No-U-Turn transition (slice formulation, Hoffman & Gelman 2014).
/// Grows a trajectory by doubling in random directions until either end
/// turns back toward the other, rejecting subtrees whose energy error
/// exceeds the divergence threshold; the new position is drawn uniformly
/// from the slice-accepted states. Advances `state` in place.
DrawStats nuts_draw(const Target& target, ChainState& state, double step,
                    const NutsControl& control);

}  // namespace ruck
