#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ruck/games.hpp"
#include "ruck/trace.hpp"

namespace ruck {

struct SeasonRow {
  int rank = 0;
  std::string team;
  double expected_points = 0.0;
  double point_diff = 0.0;
};

/// Final table of a simulated season, in rank order 1..T.
struct SeasonTable {
  std::vector<SeasonRow> rows;
};

struct TeamStanding {
  std::string team;
  double expected_points = 0.0;
  double point_diff = 0.0;
};

/// Orders standings by expected points, then mean point differential, then
/// lexicographic team name, and assigns ranks 1..T.
std::vector<SeasonRow> rank_standings(std::vector<TeamStanding> standings);

/// Simulates the fixture list once per selected posterior draw (`sims`
/// simulations total, draws thinned evenly across the merged trace) and
/// accumulates championship points: 2 for a win, 1 for a draw, 0 for a
/// loss, plus score differentials.
SeasonTable simulate_season(const Trace& trace, const GameSet& fixtures,
                            std::size_t sims, std::uint64_t seed);

/// Season table CSV: header `rank,team,expected_points,point_diff`.
std::string season_to_csv(const SeasonTable& table);

}  // namespace ruck
