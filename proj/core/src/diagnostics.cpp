#include "ruck/diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "ruck/errors.hpp"

namespace ruck {

namespace {

struct SplitView {
  std::vector<std::vector<double>> halves;
  std::size_t length = 0;  // draws per half
};

SplitView split_in_half(const std::vector<std::vector<double>>& chains) {
  if (chains.size() < 2) {
    throw ValidationError("diagnostics need at least 2 chains");
  }
  const std::size_t draws = chains.front().size();
  for (const auto& chain : chains) {
    if (chain.size() != draws) {
      throw ValidationError("diagnostics need equal draw counts per chain");
    }
  }
  if (draws < 4) {
    throw ValidationError("diagnostics need at least 4 draws per chain");
  }
  SplitView view;
  view.length = draws / 2;
  for (const auto& chain : chains) {
    view.halves.emplace_back(chain.begin(), chain.begin() + view.length);
    view.halves.emplace_back(chain.end() - view.length, chain.end());
  }
  return view;
}

double mean_of(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

double sample_variance(const std::vector<double>& v, double mean) {
  double s = 0.0;
  for (double x : v) s += (x - mean) * (x - mean);
  return s / static_cast<double>(v.size() - 1);
}

struct Moments {
  std::vector<double> means;
  double within = 0.0;      // W
  double between_over_n = 0.0;  // B / n
  double var_plus = 0.0;    // (n-1)/n W + B/n
};

Moments moments_of(const SplitView& view) {
  Moments m;
  double w = 0.0;
  for (const auto& half : view.halves) {
    const double mean = mean_of(half);
    m.means.push_back(mean);
    w += sample_variance(half, mean);
  }
  m.within = w / static_cast<double>(view.halves.size());
  const double grand = mean_of(m.means);
  m.between_over_n = sample_variance(m.means, grand);
  const double n = static_cast<double>(view.length);
  m.var_plus = (n - 1.0) / n * m.within + m.between_over_n;
  return m;
}

}  // namespace

std::optional<double> split_rhat(
    const std::vector<std::vector<double>>& chains) {
  const SplitView view = split_in_half(chains);
  const Moments m = moments_of(view);
  if (m.within == 0.0) return std::nullopt;
  return std::sqrt(m.var_plus / m.within);
}

std::optional<double> effective_sample_size(
    const std::vector<std::vector<double>>& chains) {
  const SplitView view = split_in_half(chains);
  const Moments m = moments_of(view);
  if (m.within == 0.0 || m.var_plus == 0.0) return std::nullopt;

  const std::size_t n = view.length;
  const std::size_t half_count = view.halves.size();
  const double total = static_cast<double>(half_count * n);

  // Mean autocovariance over half-chains at a given lag (biased, 1/n).
  const auto mean_autocov = [&](std::size_t lag) {
    double acc = 0.0;
    for (std::size_t j = 0; j < half_count; ++j) {
      const auto& half = view.halves[j];
      const double mean = m.means[j];
      double s = 0.0;
      for (std::size_t i = 0; i + lag < n; ++i) {
        s += (half[i] - mean) * (half[i + lag] - mean);
      }
      acc += s / static_cast<double>(n);
    }
    return acc / static_cast<double>(half_count);
  };
  const auto rho = [&](std::size_t lag) {
    if (lag == 0) return 1.0;
    return 1.0 - (m.within - mean_autocov(lag)) / m.var_plus;
  };

  // Sum pairs rho[2k] + rho[2k+1] while they stay positive.
  double rho_sum = 0.0;  // sum over lags >= 1
  for (std::size_t k = 0; 2 * k + 1 < n; ++k) {
    const double even = rho(2 * k);
    const double odd = rho(2 * k + 1);
    if (even + odd < 0.0) break;
    rho_sum += (k == 0 ? 0.0 : even) + odd;
  }

  const double denom = 1.0 + 2.0 * rho_sum;
  double ess = (denom > 0.0) ? total / denom : total;
  ess = std::min(ess, total);
  return ess;
}

bool Diagnostics::healthy(double rhat_limit) const {
  return std::all_of(columns.begin(), columns.end(),
                     [rhat_limit](const ColumnDiagnostic& c) {
                       return c.rhat.has_value() && *c.rhat < rhat_limit;
                     });
}

std::optional<double> Diagnostics::max_rhat() const {
  std::optional<double> out;
  for (const auto& c : columns) {
    if (!c.rhat) return std::nullopt;
    if (!out || *c.rhat > *out) out = c.rhat;
  }
  return out;
}

std::optional<double> Diagnostics::min_ess() const {
  std::optional<double> out;
  for (const auto& c : columns) {
    if (!c.ess) return std::nullopt;
    if (!out || *c.ess < *out) out = c.ess;
  }
  return out;
}

Diagnostics compute_diagnostics(const Trace& trace) {
  Diagnostics out;
  for (const auto& name : trace.columns) {
    const auto chains = trace.column_by_chain(name);
    out.columns.push_back(
        ColumnDiagnostic{name, split_rhat(chains), effective_sample_size(chains)});
  }
  out.divergences_per_chain.assign(trace.chain_count, 0);
  for (std::size_t c = 0; c < trace.chain_count; ++c) {
    for (std::size_t d = 0; d < trace.draws_per_chain; ++d) {
      out.divergences_per_chain[c] +=
          trace.divergent[c * trace.draws_per_chain + d];
    }
  }
  if (!trace.accept_mean.empty()) {
    double s = 0.0;
    for (double a : trace.accept_mean) s += a;
    out.mean_accept = s / static_cast<double>(trace.accept_mean.size());
  }
  return out;
}

}  // namespace ruck
