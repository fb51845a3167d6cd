#include "dnls/fit.hpp"

#include <cmath>
#include <sstream>

#include "dnls/lattice.hpp"

namespace dnls {

SlopeFit fit_loglog_slope(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw ArgumentError("fit_loglog_slope: need at least 3 points");
  SlopeFit fit;
  std::vector<double> xs;
  std::vector<double> ys;
  for (auto [x, e] : points) {
    if (!(x > 0.0) || !std::isfinite(x)) throw ArgumentError("fit_loglog_slope: abscissa must be positive");
    if (!(e >= kLogFloor) || !std::isfinite(e)) {
      if (std::isnan(e) || e < 0.0) throw ArgumentError("fit_loglog_slope: negative or NaN value");
      if (!std::isfinite(e)) throw ArgumentError("fit_loglog_slope: infinite value");
      std::ostringstream msg;
      msg << "value " << e << " at x = " << x << " floored to " << kLogFloor;
      fit.warnings.push_back(msg.str());
      e = kLogFloor;
    }
    xs.push_back(std::log(x));
    ys.push_back(std::log(e));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0.0) throw ArgumentError("fit_loglog_slope: abscissae are all equal");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  // A flat series is fitted exactly.
  fit.r2 = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  return fit;
}

}  // namespace dnls
