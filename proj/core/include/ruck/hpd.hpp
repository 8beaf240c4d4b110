#pragma once

#include <utility>
#include <vector>

namespace ruck {

/// Highest-posterior-density interval: the shortest contiguous window over
/// the sorted samples containing ceil(mass * n) of them; ties go to the
/// lowest starting index. Requires at least 10 samples and mass in (0, 1).
std::pair<double, double> hpd_interval(std::vector<double> samples,
                                       double mass);

}  // namespace ruck
