#include "ruck/games.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "ruck/errors.hpp"

namespace ruck {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

int parse_score(std::string_view field, std::size_t line_no) {
  int value = 0;
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": score is not an integer: \"" + std::string(field) +
                     "\"");
  }
  if (value < 0) {
    throw ParseError("line " + std::to_string(line_no) +
                     ": score must be non-negative, got " +
                     std::to_string(value));
  }
  return value;
}

}  // namespace

TeamIndex::TeamIndex(std::vector<std::string> names) : names_(std::move(names)) {
  std::sort(names_.begin(), names_.end());
  names_.erase(std::unique(names_.begin(), names_.end()), names_.end());
}

std::size_t TeamIndex::index(std::string_view team) const {
  if (const auto found = find(team)) return *found;
  throw LookupError("unknown team: \"" + std::string(team) + "\"");
}

std::optional<std::size_t> TeamIndex::find(std::string_view team) const {
  const auto it = std::lower_bound(names_.begin(), names_.end(), team);
  if (it == names_.end() || *it != team) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

TeamIndex index_teams(const std::vector<GameRecord>& games) {
  if (games.empty()) {
    throw ValidationError("cannot index teams of an empty game list");
  }
  std::vector<std::string> names;
  names.reserve(2 * games.size());
  for (const auto& g : games) {
    names.push_back(g.home_team);
    names.push_back(g.away_team);
  }
  return TeamIndex(std::move(names));
}

GameSet parse_games(std::string_view csv_text) {
  std::vector<std::string_view> lines = split(csv_text, '\n');
  // A trailing newline produces one empty final segment; drop it.
  if (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  if (lines.empty() || trim(lines.front()) != kGamesCsvHeader) {
    throw ParseError("missing or malformed header; expected \"" +
                     std::string(kGamesCsvHeader) + "\"");
  }

  std::vector<GameRecord> games;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const std::size_t line_no = i + 1;
    const auto fields = split(lines[i], ',');
    if (fields.size() != 4) {
      throw ParseError("line " + std::to_string(line_no) + ": expected 4 " +
                       "comma-separated fields, got " +
                       std::to_string(fields.size()));
    }
    GameRecord game;
    game.home_team = std::string(trim(fields[0]));
    game.away_team = std::string(trim(fields[1]));
    if (game.home_team.empty() || game.away_team.empty()) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": empty team name");
    }
    if (game.home_team == game.away_team) {
      throw ValidationError("line " + std::to_string(line_no) +
                            ": home_team equals away_team (\"" +
                            game.home_team + "\")");
    }
    game.home_score = parse_score(trim(fields[2]), line_no);
    game.away_score = parse_score(trim(fields[3]), line_no);
    games.push_back(std::move(game));
  }
  if (games.empty()) {
    throw ValidationError("no game rows after the header");
  }
  TeamIndex teams = index_teams(games);
  return GameSet{std::move(games), std::move(teams)};
}

std::string serialize_games(const GameSet& games) {
  std::ostringstream out;
  out << kGamesCsvHeader << '\n';
  for (const auto& g : games.games) {
    out << g.home_team << ',' << g.away_team << ',' << g.home_score << ','
        << g.away_score << '\n';
  }
  return out.str();
}

}  // namespace ruck
