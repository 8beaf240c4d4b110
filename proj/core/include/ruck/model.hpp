#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "ruck/games.hpp"

namespace ruck {

/// Prior settings. Normal priors are parametrized by precision (so the
/// default 0.001 means variance 1000); the Gamma hyperpriors on the effect
/// precisions use shape and rate.
struct Hyperparams {
  double prior_precision = 0.001;
  double gamma_shape = 0.1;
  double gamma_rate = 0.1;
};

/// Unconstrained sampling coordinates, dimension 2T+4. Flattening order:
/// [intercept, home, att_raw[0..T), def_raw[0..T), log_tau_att, log_tau_def].
struct ParamVector {
  double intercept = 0.0;
  double home = 0.0;
  std::vector<double> att_raw;
  std::vector<double> def_raw;
  double log_tau_att = 0.0;
  double log_tau_def = 0.0;

  std::size_t team_count() const { return att_raw.size(); }
  std::size_t dim() const { return 2 * att_raw.size() + 4; }

  static ParamVector zeros(std::size_t team_count);
  static ParamVector from_flat(std::span<const double> flat,
                               std::size_t team_count);
  std::vector<double> to_flat() const;

  bool operator==(const ParamVector&) const = default;
};

/// Team effects after the identifiability transform: att and def each sum
/// to zero, precisions mapped off the log scale.
struct CenteredEffects {
  std::vector<double> att;
  std::vector<double> def;
  double tau_att = 1.0;
  double tau_def = 1.0;
};

/// Subtracts the mean from each raw effect family and exponentiates the
/// log precisions.
CenteredEffects center(const ParamVector& params);

/// log Poisson pmf, y*log(mean) - mean - log(y!), with log(y!) via lgamma.
double poisson_log_pmf(int y, double mean);

/// Scoring intensities (home, away) for every fixture. Home side:
/// exp(intercept + home + att[h] + def[a]); away side:
/// exp(intercept + att[a] + def[h]).
std::vector<std::pair<double, double>> game_intensities(
    const ParamVector& params, const GameSet& games);

/// Unnormalized log posterior: Poisson likelihood over both sides of every
/// game, flat Normal priors on intercept and home, Normal(0, tau) priors on
/// the raw effects, Gamma hyperpriors on the taus evaluated at
/// tau = exp(log_tau) with the log-scale Jacobian included.
double log_posterior(const ParamVector& params, const GameSet& games,
                     const Hyperparams& hp);

/// Exact gradient of log_posterior in flattening order. The centering map
/// enters through d att[t] / d att_raw[s] = delta_ts - 1/T; the log_tau
/// coordinates include the exp transform and the Jacobian term.
std::vector<double> grad_log_posterior(const ParamVector& params,
                                       const GameSet& games,
                                       const Hyperparams& hp);

/// Data and priors bound into a reusable density/gradient pair over flat
/// coordinate spans; this is the sampler's view of the model. Unlike the
/// ParamVector entry points it never throws on bad coordinates: a non-finite
/// evaluation yields -inf (and a zero gradient), which the sampler treats
/// as a rejected, possibly divergent state.
class Model {
 public:
  Model(const GameSet& games, const Hyperparams& hp);

  std::size_t team_count() const { return team_count_; }
  std::size_t dim() const { return 2 * team_count_ + 4; }
  std::size_t game_count() const { return home_team_.size(); }

  double log_posterior(std::span<const double> flat) const;
  void gradient(std::span<const double> flat, std::span<double> out) const;

 private:
  Hyperparams hp_;
  std::size_t team_count_;
  std::vector<std::size_t> home_team_;
  std::vector<std::size_t> away_team_;
  std::vector<double> home_score_;
  std::vector<double> away_score_;
  double log_factorial_sum_;    // sum of log(y!) over all observations
  double flat_normal_const_;    // 0.5*log(precision/(2*pi)), per coordinate
  double gamma_const_;          // shape*log(rate) - lgamma(shape)
};

}  // namespace ruck
