#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ruck {

/// Posterior draws with chains stacked in order. `columns` names the value
/// columns: the raw unconstrained coordinates in flattening order, then the
/// derived centered effects (`att_<Team>`, `def_<Team>`, teams in
/// lexicographic order), `tau_att`, `tau_def`, and finally `lp`. Divergence
/// flags and tree depths ride alongside every draw. `accept_mean` (one entry
/// per chain) is populated by the sampler but not serialized.
struct Trace {
  std::vector<std::string> columns;
  std::size_t chain_count = 0;
  std::size_t draws_per_chain = 0;
  std::vector<double> values;           // ((chain*draws + draw)*ncols + col)
  std::vector<std::uint8_t> divergent;  // chain*draws + draw
  std::vector<int> tree_depth;
  std::vector<double> accept_mean;

  std::size_t total_draws() const { return chain_count * draws_per_chain; }

  double value(std::size_t chain, std::size_t draw, std::size_t col) const {
    return values[(chain * draws_per_chain + draw) * columns.size() + col];
  }

  /// Index of a named column; throws LookupError.
  std::size_t column_index(std::string_view name) const;
  bool has_column(std::string_view name) const;

  /// One column pooled across chains, chain-major order.
  std::vector<double> column(std::string_view name) const;
  std::vector<std::vector<double>> column_by_chain(std::string_view name) const;

  /// Team names recovered from the derived `att_<Team>` columns.
  std::vector<std::string> team_names() const;

  std::size_t divergence_count() const;
};

/// Trace CSV: header `chain,draw,<columns...>,divergent,tree_depth`, reals
/// rendered with 17 significant digits so a round trip is lossless.
std::string trace_to_csv(const Trace& trace);
Trace parse_trace_csv(std::string_view text);

void write_trace_csv(const Trace& trace, const std::filesystem::path& path);
Trace read_trace_csv(const std::filesystem::path& path);

/// Fixed-format rendering used by all machine-readable outputs:
/// shortest-of-17-significant-digits decimal, locale independent.
std::string format_real(double value);

}  // namespace ruck
