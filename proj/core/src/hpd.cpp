#include "ruck/hpd.hpp"

#include <algorithm>
#include <cmath>

#include "ruck/errors.hpp"

namespace ruck {

std::pair<double, double> hpd_interval(std::vector<double> samples,
                                       double mass) {
  if (samples.size() < 10) {
    throw ValidationError("hpd_interval needs at least 10 samples");
  }
  if (!(mass > 0.0 && mass < 1.0)) {
    throw ValidationError("hpd_interval mass must lie in (0, 1)");
  }
  std::sort(samples.begin(), samples.end());
  const std::size_t n = samples.size();
  // ceil(mass * n), guarded against the product landing a rounding error
  // above an exact integer.
  std::size_t k = static_cast<std::size_t>(
      std::ceil(mass * static_cast<double>(n) - 1e-9));
  k = std::clamp<std::size_t>(k, 1, n);

  std::size_t best = 0;
  double best_width = samples[k - 1] - samples[0];
  for (std::size_t i = 1; i + k <= n; ++i) {
    const double width = samples[i + k - 1] - samples[i];
    if (width < best_width) {
      best_width = width;
      best = i;
    }
  }
  return {samples[best], samples[best + k - 1]};
}

}  // namespace ruck
