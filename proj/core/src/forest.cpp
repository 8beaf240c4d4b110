#include "ruck/forest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "ruck/errors.hpp"
#include "ruck/trace.hpp"

namespace ruck {

namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

/// Pixel coordinates with two fixed decimals; keeps the emitted markup
/// byte-deterministic.
std::string px(double value) {
  char buf[32];
  const auto res =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view family_name(EffectFamily family) {
  return family == EffectFamily::att ? "att" : "def";
}

EffectFamily parse_family(std::string_view name) {
  if (name == "att") return EffectFamily::att;
  if (name == "def") return EffectFamily::def;
  throw ValidationError("unknown effect family \"" + std::string(name) +
                        "\"; expected att or def");
}

std::vector<ForestRow> forest_data(const PosteriorSummary& summary,
                                   EffectFamily family) {
  const std::string prefix = std::string(family_name(family)) + "_";
  const std::string raw_prefix = prefix + "raw_";
  std::vector<ForestRow> rows;
  for (const auto& row : summary.rows) {
    if (row.column.starts_with(prefix) && !row.column.starts_with(raw_prefix) &&
        row.column != prefix + "raw") {
      rows.push_back(ForestRow{row.column.substr(prefix.size()), row.mean,
                               row.hpd_low, row.hpd_high});
    }
  }
  if (rows.empty()) {
    throw ValidationError("summary has no columns for family " +
                          std::string(family_name(family)));
  }
  return rows;
}

std::string forest_to_csv(std::span<const ForestRow> rows,
                          EffectFamily family) {
  std::ostringstream out;
  out << "family,team,mean,hpd_low,hpd_high\n";
  for (const auto& row : rows) {
    out << family_name(family) << ',' << row.team << ','
        << format_real(row.mean) << ',' << format_real(row.hpd_low) << ','
        << format_real(row.hpd_high) << '\n';
  }
  return out.str();
}

std::string render_forest_svg(std::span<const ForestRow> rows,
                              std::string_view title) {
  if (rows.empty()) {
    throw ValidationError("forest plot needs at least one row");
  }
  for (const auto& row : rows) {
    if (!std::isfinite(row.mean) || !std::isfinite(row.hpd_low) ||
        !std::isfinite(row.hpd_high)) {
      throw ValidationError("forest plot rows must be finite");
    }
  }

  constexpr double kWidth = 640.0;
  constexpr double kHeader = 40.0;
  constexpr double kRowHeight = 30.0;
  constexpr double kPlotLeft = 150.0;
  constexpr double kPlotRight = 620.0;
  const double height = kHeader + kRowHeight * static_cast<double>(rows.size());

  // Data range always includes zero so the reference line is on canvas.
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& row : rows) {
    lo = std::min({lo, row.hpd_low, row.mean});
    hi = std::max({hi, row.hpd_high, row.mean});
  }
  if (hi == lo) {
    lo -= 1.0;
    hi += 1.0;
  }
  const double pad = 0.05 * (hi - lo);
  lo -= pad;
  hi += pad;
  const auto x_of = [&](double v) {
    return kPlotLeft + (v - lo) / (hi - lo) * (kPlotRight - kPlotLeft);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\""
      << px(height) << "\" viewBox=\"0 0 640 " << px(height) << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << px(kWidth) << "\" height=\""
      << px(height) << "\" fill=\"#ffffff\"/>\n";
  svg << "  <text x=\"320\" y=\"22\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" font-size=\"15\">"
      << xml_escape(title) << "</text>\n";
  svg << "  <line x1=\"" << px(x_of(0.0)) << "\" y1=\"" << px(kHeader - 8.0)
      << "\" x2=\"" << px(x_of(0.0)) << "\" y2=\"" << px(height - 6.0)
      << "\" stroke=\"#999999\" stroke-dasharray=\"4 3\"/>\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    const double y = kHeader + kRowHeight * static_cast<double>(i) +
                     0.5 * kRowHeight;
    svg << "  <text x=\"10\" y=\"" << px(y + 4.0)
        << "\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(row.team) << "</text>\n";
    svg << "  <line x1=\"" << px(x_of(row.hpd_low)) << "\" y1=\"" << px(y)
        << "\" x2=\"" << px(x_of(row.hpd_high)) << "\" y2=\"" << px(y)
        << "\" stroke=\"#333333\" stroke-width=\"2\"/>\n";
    svg << "  <circle cx=\"" << px(x_of(row.mean)) << "\" cy=\"" << px(y)
        << "\" r=\"4\" fill=\"#1f77b4\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ruck
