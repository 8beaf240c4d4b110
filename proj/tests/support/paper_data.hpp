#pragma once

#include <string_view>

#include "ruck/games.hpp"

namespace ruck::testing {

/// The 2014 Six Nations results: 15 games between 6 teams.
inline constexpr std::string_view kSixNationsCsv =
    "home_team,away_team,home_score,away_score\n"
    "Wales,Italy,23,15\n"
    "France,England,26,24\n"
    "Ireland,Scotland,28,6\n"
    "Ireland,Wales,26,3\n"
    "Scotland,England,0,20\n"
    "France,Italy,30,10\n"
    "Wales,France,27,6\n"
    "Italy,Scotland,20,21\n"
    "England,Ireland,13,10\n"
    "Ireland,Italy,46,7\n"
    "Scotland,France,17,19\n"
    "England,Wales,29,18\n"
    "Italy,England,11,52\n"
    "Wales,Scotland,51,3\n"
    "France,Ireland,20,22\n";

inline GameSet six_nations() { return parse_games(kSixNationsCsv); }

}  // namespace ruck::testing
