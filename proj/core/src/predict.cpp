#include "ruck/predict.hpp"

#include <algorithm>
#include <cmath>

#include "ruck/errors.hpp"
#include "ruck/hpd.hpp"
#include "ruck/rng.hpp"

namespace ruck {

namespace {

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

}  // namespace

const SummaryRow& PosteriorSummary::at(std::string_view column) const {
  for (const auto& row : rows) {
    if (row.column == column) return row;
  }
  throw LookupError("no summary row for column \"" + std::string(column) +
                    "\"");
}

PosteriorSummary posterior_summary(const Trace& trace,
                                   std::span<const std::string> columns,
                                   double mass) {
  if (trace.total_draws() == 0) throw ValidationError("empty trace");
  PosteriorSummary summary;
  summary.mass = mass;
  for (const auto& name : columns) {
    std::vector<double> draws = trace.column(name);  // throws on unknown
    const double mean = mean_of(draws);
    const auto [low, high] = hpd_interval(std::move(draws), mass);
    summary.rows.push_back(SummaryRow{name, mean, low, high});
  }
  return summary;
}

PosteriorSummary posterior_summary(const Trace& trace, double mass) {
  return posterior_summary(trace, trace.columns, mass);
}

MatchPrediction predict_match(const Trace& trace, std::string_view home,
                              std::string_view away, std::uint64_t seed,
                              std::size_t sims) {
  if (sims < 10) throw ValidationError("predict_match needs sims >= 10");
  const auto require_team = [&](std::string_view team) {
    if (!trace.has_column("att_" + std::string(team))) {
      throw LookupError("unknown team \"" + std::string(team) +
                        "\"; valid teams: " + join(trace.team_names()));
    }
  };
  require_team(home);
  require_team(away);

  const std::size_t col_intercept = trace.column_index("intercept");
  const std::size_t col_home = trace.column_index("home");
  const std::size_t att_h = trace.column_index("att_" + std::string(home));
  const std::size_t def_h = trace.column_index("def_" + std::string(home));
  const std::size_t att_a = trace.column_index("att_" + std::string(away));
  const std::size_t def_a = trace.column_index("def_" + std::string(away));

  const std::size_t total = trace.total_draws();
  if (total == 0) throw ValidationError("empty trace");

  RngStream rng(seed, 0);
  std::vector<double> home_scores;
  std::vector<double> away_scores;
  home_scores.reserve(sims);
  away_scores.reserve(sims);
  std::size_t wins = 0;
  std::size_t draws_ = 0;
  for (std::size_t k = 0; k < sims; ++k) {
    const std::size_t idx = k * total / sims;
    const std::size_t chain = idx / trace.draws_per_chain;
    const std::size_t draw = idx % trace.draws_per_chain;
    const double intercept = trace.value(chain, draw, col_intercept);
    const double home_adv = trace.value(chain, draw, col_home);
    const double rate_home =
        std::exp(intercept + home_adv + trace.value(chain, draw, att_h) +
                 trace.value(chain, draw, def_a));
    const double rate_away = std::exp(
        intercept + trace.value(chain, draw, att_a) +
        trace.value(chain, draw, def_h));
    const int s1 = rng.poisson(rate_home);
    const int s2 = rng.poisson(rate_away);
    home_scores.push_back(s1);
    away_scores.push_back(s2);
    if (s1 > s2) {
      ++wins;
    } else if (s1 == s2) {
      ++draws_;
    }
  }

  MatchPrediction pred;
  pred.home_team = std::string(home);
  pred.away_team = std::string(away);
  pred.home_mean = mean_of(home_scores);
  pred.away_mean = mean_of(away_scores);
  const auto hi = hpd_interval(home_scores, 0.95);
  const auto ai = hpd_interval(away_scores, 0.95);
  pred.home_interval = {static_cast<int>(hi.first),
                        static_cast<int>(hi.second)};
  pred.away_interval = {static_cast<int>(ai.first),
                        static_cast<int>(ai.second)};
  const double n = static_cast<double>(sims);
  pred.p_home_win = static_cast<double>(wins) / n;
  pred.p_draw = static_cast<double>(draws_) / n;
  pred.p_away_win = static_cast<double>(sims - wins - draws_) / n;
  return pred;
}

}  // namespace ruck
