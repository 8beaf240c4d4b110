#include "ruck/nuts.hpp"

#include <cmath>
#include <utility>

#include "ruck/errors.hpp"

namespace ruck {

namespace {

/// Candidate drawn from a subtree, with the cached evaluations the chain
/// state needs if the candidate wins.
struct Proposal {
  std::vector<double> position;
  double log_prob = 0.0;
  std::vector<double> grad;
};

/// A built subtree. `inner` and `outer` are its trajectory endpoints:
/// `inner` is the end adjacent to the start point, `outer` the far end in
/// the current integration direction.
struct Subtree {
  PhasePoint inner;
  PhasePoint outer;
  Proposal proposal;
  double weight = 0.0;      // number of slice-accepted states
  bool open = false;        // no U-turn, no divergence inside
  bool divergent = false;
  double alpha_sum = 0.0;   // sum of per-leaf acceptance statistics
  double leaf_count = 0.0;
};

/// U-turn test across a segment. `backward`/`forward` are the segment ends
/// in trajectory order (not growth order): stop when the span between them
/// shrinks along the momentum at either end.
bool turned(const PhasePoint& backward, const PhasePoint& forward) {
  double dot_back = 0.0;
  double dot_fwd = 0.0;
  for (std::size_t i = 0; i < backward.position.size(); ++i) {
    const double span = forward.position[i] - backward.position[i];
    dot_back += span * backward.momentum[i];
    dot_fwd += span * forward.momentum[i];
  }
  return dot_back < 0.0 || dot_fwd < 0.0;
}

struct TreeBuilder {
  const Target& target;
  double step;              // signed: direction times step size
  double log_slice;
  double joint0;            // joint log density at the start of the draw
  double divergence_threshold;
  RngStream& rng;

  Subtree leaf(const PhasePoint& from) {
    Subtree tree;
    PhasePoint z = from;
    leapfrog(target, z, step);
    const double joint = z.joint_log_prob();
    tree.weight = (log_slice <= joint) ? 1.0 : 0.0;
    tree.divergent = (log_slice - joint > divergence_threshold);
    tree.open = !tree.divergent;
    const double log_ratio = joint - joint0;
    tree.alpha_sum = (log_ratio >= 0.0) ? 1.0 : std::exp(log_ratio);
    if (!std::isfinite(tree.alpha_sum)) tree.alpha_sum = 0.0;
    tree.leaf_count = 1.0;
    tree.proposal = Proposal{z.position, z.log_prob, z.grad};
    tree.inner = z;
    tree.outer = std::move(z);
    return tree;
  }

  /// Builds a subtree of 2^depth leapfrog steps growing away from `from`.
  Subtree build(const PhasePoint& from, int depth) {
    if (depth == 0) return leaf(from);

    Subtree first = build(from, depth - 1);
    if (!first.open) return first;

    Subtree second = build(first.outer, depth - 1);
    first.alpha_sum += second.alpha_sum;
    first.leaf_count += second.leaf_count;
    first.divergent = first.divergent || second.divergent;

    const double total = first.weight + second.weight;
    if (second.open && second.weight > 0.0 &&
        rng.uniform() * total < second.weight) {
      first.proposal = std::move(second.proposal);
    }
    first.weight = total;
    first.outer = std::move(second.outer);

    // Both ends of the merged subtree, oriented by integration direction.
    const PhasePoint& backward = (step > 0.0) ? first.inner : first.outer;
    const PhasePoint& forward = (step > 0.0) ? first.outer : first.inner;
    first.open = first.open && second.open && !turned(backward, forward);
    return first;
  }
};

}  // namespace

ChainState ChainState::at(const Target& target, std::vector<double> position,
                          RngStream rng) {
  ChainState state{std::move(position), 0.0, {}, rng};
  state.gradient.resize(state.position.size());
  state.log_prob = target.log_prob(state.position);
  target.gradient(state.position, state.gradient);
  return state;
}

DrawStats nuts_draw(const Target& target, ChainState& state, double step,
                    const NutsControl& control) {
  if (!(step > 0.0)) throw ValidationError("nuts_draw: step must be positive");

  std::vector<double> momentum(target.dim);
  for (double& p : momentum) p = state.rng.normal();

  PhasePoint start;
  start.position = state.position;
  start.momentum = std::move(momentum);
  start.log_prob = state.log_prob;
  start.grad = state.gradient;
  const double joint0 = start.joint_log_prob();
  if (!std::isfinite(joint0)) {
    throw SamplerError("nuts_draw: chain is in a state of zero density");
  }
  const double log_slice = std::log(state.rng.uniform_pos()) + joint0;

  PhasePoint backward = start;
  PhasePoint forward = std::move(start);
  Proposal chosen{state.position, state.log_prob, state.gradient};
  double weight = 1.0;

  DrawStats stats;
  double alpha_sum = 0.0;
  double leaf_count = 0.0;
  bool open = true;

  while (open && stats.tree_depth < control.max_tree_depth) {
    const double direction = state.rng.coin() ? 1.0 : -1.0;
    TreeBuilder builder{target, direction * step, log_slice, joint0,
                        control.divergence_threshold, state.rng};
    Subtree tree =
        builder.build(direction > 0.0 ? forward : backward, stats.tree_depth);
    if (direction > 0.0) {
      forward = std::move(tree.outer);
    } else {
      backward = std::move(tree.outer);
    }

    alpha_sum += tree.alpha_sum;
    leaf_count += tree.leaf_count;
    stats.divergent = stats.divergent || tree.divergent;

    if (tree.open && tree.weight > 0.0 &&
        state.rng.uniform() * weight < tree.weight) {
      chosen = std::move(tree.proposal);
    }
    weight += tree.weight;
    open = tree.open && !turned(backward, forward);
    ++stats.tree_depth;
  }

  state.position = std::move(chosen.position);
  state.log_prob = chosen.log_prob;
  state.gradient = std::move(chosen.grad);
  stats.accept_stat = (leaf_count > 0.0) ? alpha_sum / leaf_count : 0.0;
  return stats;
}

}  // namespace ruck
