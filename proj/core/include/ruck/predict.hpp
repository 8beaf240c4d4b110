#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ruck/trace.hpp"

namespace ruck {

struct SummaryRow {
  std::string column;
  double mean = 0.0;
  double hpd_low = 0.0;
  double hpd_high = 0.0;
};

/// Per-column posterior mean and HPD interval, pooled over chains.
struct PosteriorSummary {
  double mass = 0.95;
  std::vector<SummaryRow> rows;

  const SummaryRow& at(std::string_view column) const;  // throws LookupError
};

PosteriorSummary posterior_summary(const Trace& trace,
                                   std::span<const std::string> columns,
                                   double mass = 0.95);

/// Summary over every value column.
PosteriorSummary posterior_summary(const Trace& trace, double mass = 0.95);

/// Posterior-predictive distribution of one fixture, Monte Carlo over the
/// trace.
struct MatchPrediction {
  std::string home_team;
  std::string away_team;
  double home_mean = 0.0;
  double away_mean = 0.0;
  std::pair<int, int> home_interval;  // 95% HPD over simulated scores
  std::pair<int, int> away_interval;
  double p_home_win = 0.0;
  double p_draw = 0.0;
  double p_away_win = 0.0;
};

/// Simulates `sims` score pairs: simulation k uses posterior draw
/// floor(k * D / sims), which thins the trace evenly (and reuses draws
/// evenly when sims exceeds the trace size), computes the two scoring
/// intensities from that draw, and samples one Poisson pair.
MatchPrediction predict_match(const Trace& trace, std::string_view home,
                              std::string_view away, std::uint64_t seed,
                              std::size_t sims);

}  // namespace ruck
