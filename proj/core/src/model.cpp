#include "ruck/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ruck/errors.hpp"

namespace ruck {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr double kLogTwoPi = 1.8378770664093454836;

bool all_finite(std::span<const double> values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

void require_finite(const ParamVector& params, const char* where) {
  if (!std::isfinite(params.intercept) || !std::isfinite(params.home) ||
      !std::isfinite(params.log_tau_att) || !std::isfinite(params.log_tau_def) ||
      !all_finite(params.att_raw) || !all_finite(params.def_raw)) {
    throw NumericError(std::string(where) + ": non-finite parameter value");
  }
}

double mean_of(std::span<const double> values) {
  double sum = 0.0;
  for (double v : values) sum += v;
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

}  // namespace

ParamVector ParamVector::zeros(std::size_t team_count) {
  ParamVector p;
  p.att_raw.assign(team_count, 0.0);
  p.def_raw.assign(team_count, 0.0);
  return p;
}

ParamVector ParamVector::from_flat(std::span<const double> flat,
                                   std::size_t team_count) {
  if (flat.size() != 2 * team_count + 4) {
    throw ValidationError("flat parameter vector has wrong dimension");
  }
  ParamVector p;
  p.intercept = flat[0];
  p.home = flat[1];
  p.att_raw.assign(flat.begin() + 2, flat.begin() + 2 + team_count);
  p.def_raw.assign(flat.begin() + 2 + team_count,
                   flat.begin() + 2 + 2 * team_count);
  p.log_tau_att = flat[2 + 2 * team_count];
  p.log_tau_def = flat[3 + 2 * team_count];
  return p;
}

std::vector<double> ParamVector::to_flat() const {
  std::vector<double> flat;
  flat.reserve(dim());
  flat.push_back(intercept);
  flat.push_back(home);
  flat.insert(flat.end(), att_raw.begin(), att_raw.end());
  flat.insert(flat.end(), def_raw.begin(), def_raw.end());
  flat.push_back(log_tau_att);
  flat.push_back(log_tau_def);
  return flat;
}

CenteredEffects center(const ParamVector& params) {
  if (params.att_raw.size() != params.def_raw.size()) {
    throw ValidationError("att_raw and def_raw must have equal length");
  }
  CenteredEffects out;
  const double att_mean = mean_of(params.att_raw);
  const double def_mean = mean_of(params.def_raw);
  out.att.reserve(params.att_raw.size());
  out.def.reserve(params.def_raw.size());
  for (double a : params.att_raw) out.att.push_back(a - att_mean);
  for (double d : params.def_raw) out.def.push_back(d - def_mean);
  out.tau_att = std::exp(params.log_tau_att);
  out.tau_def = std::exp(params.log_tau_def);
  return out;
}

double poisson_log_pmf(int y, double mean) {
  if (y < 0) throw NumericError("poisson_log_pmf: y must be non-negative");
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw NumericError("poisson_log_pmf: mean must be positive and finite");
  }
  return y * std::log(mean) - mean - std::lgamma(static_cast<double>(y) + 1.0);
}

std::vector<std::pair<double, double>> game_intensities(
    const ParamVector& params, const GameSet& games) {
  if (params.team_count() != games.teams.size()) {
    throw ValidationError("parameter vector does not cover the team set");
  }
  const CenteredEffects eff = center(params);
  std::vector<std::pair<double, double>> out;
  out.reserve(games.games.size());
  for (const auto& g : games.games) {
    const std::size_t h = games.teams.index(g.home_team);
    const std::size_t a = games.teams.index(g.away_team);
    const double home_rate =
        std::exp(params.intercept + params.home + eff.att[h] + eff.def[a]);
    const double away_rate =
        std::exp(params.intercept + eff.att[a] + eff.def[h]);
    out.emplace_back(home_rate, away_rate);
  }
  return out;
}

Model::Model(const GameSet& games, const Hyperparams& hp)
    : hp_(hp), team_count_(games.teams.size()) {
  if (!(hp.prior_precision > 0.0) || !(hp.gamma_shape > 0.0) ||
      !(hp.gamma_rate > 0.0)) {
    throw ValidationError("hyperparameters must be strictly positive");
  }
  home_team_.reserve(games.games.size());
  away_team_.reserve(games.games.size());
  home_score_.reserve(games.games.size());
  away_score_.reserve(games.games.size());
  log_factorial_sum_ = 0.0;
  for (const auto& g : games.games) {
    home_team_.push_back(games.teams.index(g.home_team));
    away_team_.push_back(games.teams.index(g.away_team));
    home_score_.push_back(static_cast<double>(g.home_score));
    away_score_.push_back(static_cast<double>(g.away_score));
    log_factorial_sum_ += std::lgamma(g.home_score + 1.0);
    log_factorial_sum_ += std::lgamma(g.away_score + 1.0);
  }
  flat_normal_const_ = 0.5 * (std::log(hp.prior_precision) - kLogTwoPi);
  gamma_const_ =
      hp.gamma_shape * std::log(hp.gamma_rate) - std::lgamma(hp.gamma_shape);
}

double Model::log_posterior(std::span<const double> x) const {
  const std::size_t t = team_count_;
  const double intercept = x[0];
  const double home = x[1];
  const std::span<const double> att_raw = x.subspan(2, t);
  const std::span<const double> def_raw = x.subspan(2 + t, t);
  const double log_tau_att = x[2 + 2 * t];
  const double log_tau_def = x[3 + 2 * t];

  const double att_mean = mean_of(att_raw);
  const double def_mean = mean_of(def_raw);
  const double tau_att = std::exp(log_tau_att);
  const double tau_def = std::exp(log_tau_def);

  double lp = 0.0;

  // Likelihood over both sides of every game.
  for (std::size_t g = 0; g < home_team_.size(); ++g) {
    const double att_h = att_raw[home_team_[g]] - att_mean;
    const double att_a = att_raw[away_team_[g]] - att_mean;
    const double def_h = def_raw[home_team_[g]] - def_mean;
    const double def_a = def_raw[away_team_[g]] - def_mean;
    const double home_lin = intercept + home + att_h + def_a;
    const double away_lin = intercept + att_a + def_h;
    lp += home_score_[g] * home_lin - std::exp(home_lin);
    lp += away_score_[g] * away_lin - std::exp(away_lin);
  }
  lp -= log_factorial_sum_;

  // Flat Normal priors on intercept and home.
  lp += 2.0 * flat_normal_const_;
  lp -= 0.5 * hp_.prior_precision * (intercept * intercept + home * home);

  // Raw effects: Normal(0, precision tau), tau = exp(log_tau).
  double att_sq = 0.0;
  for (double a : att_raw) att_sq += a * a;
  double def_sq = 0.0;
  for (double d : def_raw) def_sq += d * d;
  const double td = static_cast<double>(t);
  lp += 0.5 * td * (log_tau_att - kLogTwoPi) - 0.5 * tau_att * att_sq;
  lp += 0.5 * td * (log_tau_def - kLogTwoPi) - 0.5 * tau_def * def_sq;

  // Gamma hyperpriors at tau plus the log-scale Jacobian: the (shape-1) and
  // Jacobian log terms combine to shape * log_tau.
  lp += gamma_const_ + hp_.gamma_shape * log_tau_att - hp_.gamma_rate * tau_att;
  lp += gamma_const_ + hp_.gamma_shape * log_tau_def - hp_.gamma_rate * tau_def;

  return std::isfinite(lp) ? lp : kNegInf;
}

void Model::gradient(std::span<const double> x, std::span<double> out) const {
  const std::size_t t = team_count_;
  const double intercept = x[0];
  const double home = x[1];
  const std::span<const double> att_raw = x.subspan(2, t);
  const std::span<const double> def_raw = x.subspan(2 + t, t);
  const double tau_att = std::exp(x[2 + 2 * t]);
  const double tau_def = std::exp(x[3 + 2 * t]);

  const double att_mean = mean_of(att_raw);
  const double def_mean = mean_of(def_raw);

  std::fill(out.begin(), out.end(), 0.0);
  std::span<double> att_out = out.subspan(2, t);
  std::span<double> def_out = out.subspan(2 + t, t);

  // Likelihood terms via the residuals y - rate.
  for (std::size_t g = 0; g < home_team_.size(); ++g) {
    const std::size_t h = home_team_[g];
    const std::size_t a = away_team_[g];
    const double home_lin =
        intercept + home + (att_raw[h] - att_mean) + (def_raw[a] - def_mean);
    const double away_lin =
        intercept + (att_raw[a] - att_mean) + (def_raw[h] - def_mean);
    const double r1 = home_score_[g] - std::exp(home_lin);
    const double r2 = away_score_[g] - std::exp(away_lin);
    out[0] += r1 + r2;
    out[1] += r1;
    att_out[h] += r1;
    att_out[a] += r2;
    def_out[a] += r1;
    def_out[h] += r2;
  }

  // Centering pushback: d att[t] / d att_raw[s] = delta_ts - 1/T.
  const double att_pull = mean_of(att_out);
  const double def_pull = mean_of(def_out);
  double att_sq = 0.0;
  double def_sq = 0.0;
  for (std::size_t i = 0; i < t; ++i) {
    att_out[i] -= att_pull;
    def_out[i] -= def_pull;
    att_sq += att_raw[i] * att_raw[i];
    def_sq += def_raw[i] * def_raw[i];
    // Normal(0, tau) prior on the raw coordinates.
    att_out[i] -= tau_att * att_raw[i];
    def_out[i] -= tau_def * def_raw[i];
  }

  // Flat Normal priors.
  out[0] -= hp_.prior_precision * intercept;
  out[1] -= hp_.prior_precision * home;

  // log_tau coordinates: normalization of the effect priors, the quadratic
  // term, the Gamma hyperprior, and the Jacobian, all through tau = e^u.
  const double td = static_cast<double>(t);
  out[2 + 2 * t] = 0.5 * td - 0.5 * tau_att * att_sq + hp_.gamma_shape -
                   hp_.gamma_rate * tau_att;
  out[3 + 2 * t] = 0.5 * td - 0.5 * tau_def * def_sq + hp_.gamma_shape -
                   hp_.gamma_rate * tau_def;

  for (double& v : out) {
    if (!std::isfinite(v)) v = 0.0;
  }
}

double log_posterior(const ParamVector& params, const GameSet& games,
                     const Hyperparams& hp) {
  require_finite(params, "log_posterior");
  if (params.team_count() != games.teams.size()) {
    throw ValidationError("parameter vector does not cover the team set");
  }
  const Model model(games, hp);
  return model.log_posterior(params.to_flat());
}

std::vector<double> grad_log_posterior(const ParamVector& params,
                                       const GameSet& games,
                                       const Hyperparams& hp) {
  require_finite(params, "grad_log_posterior");
  if (params.team_count() != games.teams.size()) {
    throw ValidationError("parameter vector does not cover the team set");
  }
  const Model model(games, hp);
  std::vector<double> grad(model.dim());
  model.gradient(params.to_flat(), grad);
  return grad;
}

}  // namespace ruck
