#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dnls/dynamics.hpp"

namespace dnls {

/// Order not covered by the explicit formulas (odd energies beyond k = 1).
class UnsupportedOrderError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

struct EnergyBreakdown {
  std::string leading_name;
  double leading = 0.0;
  /// Signed contributions; total = leading + sum of these.
  std::vector<std::pair<std::string, double>> corrections;
  double total = 0.0;
};

nlohmann::json to_json(const EnergyBreakdown& e);

/// E_2k = ||d_t^k u||^2 - ||d_t^{k-1} N(u)||^2
///        - (lambda/2) sum_j <|d_t^{k-1} D+_j |u|^2|^2, W_j>_h,
/// N(u) = lambda |u|^{p-1} u and
/// W_j(a) = sum_{l=1}^{(p-1)/2} |u(a)|^{p-1-2l} |u(a + h e_j)|^{2l-2}.
EnergyBreakdown modified_energy_even(const GridFunction& u, int k, const ModelParams& params);

/// E_3 = 1/2 ||D+ d_t u||^2 + lambda (1/2 <|u|^{p-1}, |d_t u|^2>_h
///       + (p-1)/8 <|u|^{p-3}, |d_t |u|^2|^2>_h). Only k = 1.
EnergyBreakdown modified_energy_odd(const GridFunction& u, int k, const ModelParams& params);

struct JetGap {
  double gap;        ///< ||d_t^k u - i^k Delta_h^k u||_{H^s}
  double bound_ref;  ///< ||u||_{H^{s+2k-1}}
};

JetGap jet_laplacian_gap(const GridFunction& u, int k, double s, const ModelParams& params);

/// ||u||_{L^q} / (||u||_{L^2}^{1-theta} ||u||_{Hdot^s}^theta), theta = (d/s)(1/2 - 1/q).
double gagliardo_nirenberg_ratio(const GridFunction& u, double q, double s);

/// 3/q + d/r = d/2 (to 1e-12), 2 <= q < inf, 2 <= r <= inf.
bool strichartz_admissible(double q, double r, int d);

/// (int_0^T ||e^{it Delta_h} u0||_{L^r}^q dt)^{1/q} / ||u0||_{H^{1/q}} by the
/// composite trapezoid rule on `intervals` + 1 points.
double strichartz_ratio(const GridFunction& u0, double q, double r, double T, int intervals = 512);

/// ||f g||_inf / prod_{v = f, g} ||v||_{H^1}^{1-eps} ||v||_{H^2}^eps.
double bilinear_linf_ratio(const GridFunction& f, const GridFunction& g, double eps = 0.1);

/// ||S_h f S_h g||_{H^s} / (||S_h f||_{H^s1} ||S_h g||_{H^s2}), requires
/// s <= min(s1, s2) and s < s1 + s2 - d/2.
double product_estimate_ratio(const GridFunction& f, const GridFunction& g, double s, double s1,
                              double s2);

struct GrowthSeries {
  int m = 1;
  std::vector<double> times;
  std::vector<double> norms;
  double fit_exponent = 0.0;
  double window_start = 0.0;  ///< fit uses times in [window_start, T]
  void write_csv(std::ostream& os) const;
};

/// Samples ||u(t)||_{H^m} at t_i = i T / samples, fits log-log on [T/2, T].
GrowthSeries growth_track(const GridFunction& u0, int m, double T, int samples,
                          const Integrator& integrator);

}  // namespace dnls
