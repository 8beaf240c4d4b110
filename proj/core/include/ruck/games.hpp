#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ruck {

/// One observed fixture: who played where and the final score.
struct GameRecord {
  std::string home_team;
  std::string away_team;
  int home_score = 0;
  int away_score = 0;

  bool operator==(const GameRecord&) const = default;
};

/// Bijection between team names and dense indices 0..T-1. Names are kept in
/// lexicographic (byte) order, so the indices do not depend on the order the
/// fixtures were listed in.
class TeamIndex {
 public:
  TeamIndex() = default;
  explicit TeamIndex(std::vector<std::string> names);

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t index) const { return names_.at(index); }
  const std::vector<std::string>& names() const { return names_; }

  /// Index of `team`; throws LookupError for unknown names.
  std::size_t index(std::string_view team) const;
  std::optional<std::size_t> find(std::string_view team) const;

  bool operator==(const TeamIndex&) const = default;

 private:
  std::vector<std::string> names_;  // sorted, unique
};

struct GameSet {
  std::vector<GameRecord> games;
  TeamIndex teams;

  bool operator==(const GameSet&) const = default;
};

/// Header required on the first line of fixture CSV input.
inline constexpr std::string_view kGamesCsvHeader =
    "home_team,away_team,home_score,away_score";

/// TeamIndex over every team that appears in `games`.
TeamIndex index_teams(const std::vector<GameRecord>& games);

/// Parses fixture CSV (header `home_team,away_team,home_score,away_score`,
/// LF or CRLF). Fields are trimmed; quoting and embedded commas are not
/// supported. Errors carry 1-based line numbers.
GameSet parse_games(std::string_view csv_text);

/// Inverse of parse_games; emits the same CSV dialect.
std::string serialize_games(const GameSet& games);

}  // namespace ruck
