#include "ruck/rng.hpp"

#include <cmath>

#include "ruck/errors.hpp"

namespace ruck {

double RngStream::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  double v = 0.0;
  double s = 0.0;
  do {
    u = 2.0 * uniform() - 1.0;
    v = 2.0 * uniform() - 1.0;
    s = u * u + v * v;
  } while (s >= 1.0 || s == 0.0);
  const double f = std::sqrt(-2.0 * std::log(s) / s);
  spare_ = v * f;
  has_spare_ = true;
  return u * f;
}

int RngStream::poisson(double mean) {
  if (!(mean > 0.0) || !std::isfinite(mean)) {
    throw NumericError("poisson: mean must be positive and finite");
  }
  int total = 0;
  while (mean > 500.0) {
    total += poisson(500.0);
    mean -= 500.0;
  }
  double p = std::exp(-mean);
  double cdf = p;
  const double u = uniform();
  int k = 0;
  while (u > cdf) {
    ++k;
    p *= mean / k;
    cdf += p;
    if (!(p > 0.0)) break;  // pmf underflow; the remaining tail is < 1 ulp
  }
  return total + k;
}

}  // namespace ruck
