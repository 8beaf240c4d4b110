#include "ruck/season.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "ruck/errors.hpp"
#include "ruck/rng.hpp"

namespace ruck {

std::vector<SeasonRow> rank_standings(std::vector<TeamStanding> standings) {
  std::sort(standings.begin(), standings.end(),
            [](const TeamStanding& a, const TeamStanding& b) {
              if (a.expected_points != b.expected_points) {
                return a.expected_points > b.expected_points;
              }
              if (a.point_diff != b.point_diff) {
                return a.point_diff > b.point_diff;
              }
              return a.team < b.team;
            });
  std::vector<SeasonRow> rows;
  rows.reserve(standings.size());
  for (std::size_t i = 0; i < standings.size(); ++i) {
    rows.push_back(SeasonRow{static_cast<int>(i) + 1, standings[i].team,
                             standings[i].expected_points,
                             standings[i].point_diff});
  }
  return rows;
}

SeasonTable simulate_season(const Trace& trace, const GameSet& fixtures,
                            std::size_t sims, std::uint64_t seed) {
  if (fixtures.games.empty()) {
    throw ValidationError("simulate_season needs a non-empty fixture list");
  }
  if (sims == 0) throw ValidationError("simulate_season needs sims >= 1");
  const std::size_t total = trace.total_draws();
  if (total == 0) throw ValidationError("empty trace");

  const std::size_t col_intercept = trace.column_index("intercept");
  const std::size_t col_home = trace.column_index("home");
  const std::size_t team_count = fixtures.teams.size();

  // Per-fixture column indices; throws LookupError when the trace does not
  // cover a fixture's team.
  struct FixtureCols {
    std::size_t home_team, away_team;  // indices into fixtures.teams
    std::size_t att_h, def_h, att_a, def_a;
  };
  std::vector<FixtureCols> cols;
  cols.reserve(fixtures.games.size());
  for (const auto& g : fixtures.games) {
    FixtureCols fc;
    fc.home_team = fixtures.teams.index(g.home_team);
    fc.away_team = fixtures.teams.index(g.away_team);
    fc.att_h = trace.column_index("att_" + g.home_team);
    fc.def_h = trace.column_index("def_" + g.home_team);
    fc.att_a = trace.column_index("att_" + g.away_team);
    fc.def_a = trace.column_index("def_" + g.away_team);
    cols.push_back(fc);
  }

  RngStream rng(seed, 0);
  std::vector<std::int64_t> points(team_count, 0);
  std::vector<std::int64_t> diff(team_count, 0);
  for (std::size_t k = 0; k < sims; ++k) {
    const std::size_t idx = k * total / sims;
    const std::size_t chain = idx / trace.draws_per_chain;
    const std::size_t draw = idx % trace.draws_per_chain;
    const double intercept = trace.value(chain, draw, col_intercept);
    const double home_adv = trace.value(chain, draw, col_home);
    for (const auto& fc : cols) {
      const double rate_home =
          std::exp(intercept + home_adv + trace.value(chain, draw, fc.att_h) +
                   trace.value(chain, draw, fc.def_a));
      const double rate_away =
          std::exp(intercept + trace.value(chain, draw, fc.att_a) +
                   trace.value(chain, draw, fc.def_h));
      const int s1 = rng.poisson(rate_home);
      const int s2 = rng.poisson(rate_away);
      if (s1 > s2) {
        points[fc.home_team] += 2;
      } else if (s1 < s2) {
        points[fc.away_team] += 2;
      } else {
        points[fc.home_team] += 1;
        points[fc.away_team] += 1;
      }
      diff[fc.home_team] += s1 - s2;
      diff[fc.away_team] += s2 - s1;
    }
  }

  std::vector<TeamStanding> standings;
  standings.reserve(team_count);
  const double n = static_cast<double>(sims);
  for (std::size_t t = 0; t < team_count; ++t) {
    standings.push_back(TeamStanding{fixtures.teams.name(t),
                                     static_cast<double>(points[t]) / n,
                                     static_cast<double>(diff[t]) / n});
  }
  return SeasonTable{rank_standings(std::move(standings))};
}

std::string season_to_csv(const SeasonTable& table) {
  std::ostringstream out;
  out << "rank,team,expected_points,point_diff\n";
  for (const auto& row : table.rows) {
    out << row.rank << ',' << row.team << ',' << format_real(row.expected_points)
        << ',' << format_real(row.point_diff) << '\n';
  }
  return out.str();
}

}  // namespace ruck
