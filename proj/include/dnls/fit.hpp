#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dnls {

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 1.0;
  std::vector<std::string> warnings;
};

/// Values below this are replaced before taking logs.
inline constexpr double kLogFloor = 1e-16;

/// Least squares of log(e) against log(x) over (x, e) pairs. Needs at least
/// 3 points with x > 0; e below kLogFloor is floored and a warning recorded.
SlopeFit fit_loglog_slope(std::span<const std::pair<double, double>> points);

}  // namespace dnls
