#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ruck/trace.hpp"

namespace ruck {

/// Split potential-scale-reduction diagnostic: each chain is cut in half
/// and R-hat is computed over the half-chains,
/// sqrt(((n-1)/n * W + B/n) / W). Returns nullopt when the within-chain
/// variance is exactly zero (degenerate input). Requires at least 2 chains
/// of at least 4 draws each, all of equal length.
std::optional<double> split_rhat(
    const std::vector<std::vector<double>>& chains);

/// Effective sample size MN / (1 + 2 * sum of autocorrelations), with the
/// autocorrelation sum truncated at the first negative pair
/// rho[2k] + rho[2k+1] < 0 (Geyer's initial positive sequence) and the
/// result clipped to (0, MN]. Same preconditions and degenerate signal as
/// split_rhat.
std::optional<double> effective_sample_size(
    const std::vector<std::vector<double>>& chains);

struct ColumnDiagnostic {
  std::string column;
  std::optional<double> rhat;
  std::optional<double> ess;
};

struct Diagnostics {
  std::vector<ColumnDiagnostic> columns;
  std::vector<std::size_t> divergences_per_chain;
  std::optional<double> mean_accept;

  /// True when every column has a defined R-hat below `rhat_limit`.
  bool healthy(double rhat_limit = 1.05) const;
  std::optional<double> max_rhat() const;
  std::optional<double> min_ess() const;
};

/// Per-column R-hat and ESS over every value column of the trace.
Diagnostics compute_diagnostics(const Trace& trace);

}  // namespace ruck
