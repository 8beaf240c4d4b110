#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ruck/predict.hpp"

namespace ruck {

enum class EffectFamily { att, def };

std::string_view family_name(EffectFamily family);

/// Parses "att"/"def"; throws ValidationError otherwise.
EffectFamily parse_family(std::string_view name);

struct ForestRow {
  std::string team;
  double mean = 0.0;
  double hpd_low = 0.0;
  double hpd_high = 0.0;
};

/// One row per team of the requested effect family, in the summary's
/// (lexicographic) team order.
std::vector<ForestRow> forest_data(const PosteriorSummary& summary,
                                   EffectFamily family);

/// Forest CSV: header `family,team,mean,hpd_low,hpd_high`.
std::string forest_to_csv(std::span<const ForestRow> rows,
                          EffectFamily family);

/// Standalone deterministic SVG: a 640 x (40 + 30*rows) canvas with one
/// horizontal interval per row, a mean marker, the team label, and a
/// vertical zero reference line.
std::string render_forest_svg(std::span<const ForestRow> rows,
                              std::string_view title);

}  // namespace ruck
