#pragma once

#include <cmath>
#include <functional>
#include <span>
#include <vector>

#include "ruck/rng.hpp"

namespace ruck {

/// Differentiable unnormalized log density the samplers drive. `gradient`
/// writes into its second argument. Implementations must return -inf (and a
/// harmless gradient) rather than throw when an evaluation blows up.
struct Target {
  std::size_t dim = 0;
  std::function<double(std::span<const double>)> log_prob;
  std::function<void(std::span<const double>, std::span<double>)> gradient;
};

/// One phase-space point. `log_prob` and `grad` are always kept consistent
/// with `position`.
struct PhasePoint {
  std::vector<double> position;
  std::vector<double> momentum;
  double log_prob = 0.0;
  std::vector<double> grad;

  static PhasePoint at(const Target& target, std::vector<double> position,
                       std::vector<double> momentum);

  /// log density of the joint (position, momentum) state with identity mass:
  /// log_prob - |momentum|^2 / 2. -inf when anything is non-finite.
  double joint_log_prob() const;
};

/// One leapfrog step of size `step`: half momentum kick, full position
/// drift, half momentum kick, with potential -log_prob and identity mass.
/// Uses the cached gradient for the first kick and leaves `z` consistent.
void leapfrog(const Target& target, PhasePoint& z, double step);

/// Dual-averaging step-size controller targeting a mean acceptance
/// statistic (Hoffman & Gelman 2014): mu = log(10 * initial_step),
/// gamma = 0.05, t0 = 10, kappa = 0.75.
class DualAveraging {
 public:
  DualAveraging(double initial_step, double target_accept)
      : mu_(std::log(10.0 * initial_step)),
        log_step_(std::log(initial_step)),
        target_(target_accept) {}

  void update(double accept_stat);

  /// Step size to use for the next adaptation iteration.
  double current() const { return std::exp(log_step_); }

  /// Averaged step size; freeze to this after warmup (valid once at least
  /// one update has been made).
  double averaged() const { return std::exp(log_step_avg_); }

  double mu() const { return mu_; }
  double h_bar() const { return h_bar_; }

 private:
  static constexpr double kGamma = 0.05;
  static constexpr double kT0 = 10.0;
  static constexpr double kKappa = 0.75;

  double mu_;
  double log_step_;
  double log_step_avg_ = 0.0;
  double h_bar_ = 0.0;
  double target_;
  double count_ = 1.0;
};

/// Heuristic initial step size: from `position`, doubles or halves a unit
/// step until the one-step joint acceptance probability crosses 1/2.
double find_initial_step(const Target& target,
                         std::span<const double> position, RngStream& rng);

}  // namespace ruck
