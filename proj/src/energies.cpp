#include "dnls/energies.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

#include "dnls/fit.hpp"

namespace dnls {

namespace {

double modulus2_power(Complex z, int e) {
  const double a2 = std::norm(z);
  double out = 1.0;
  for (int i = 0; i < e; ++i) out *= a2;
  return out;
}

// Layers of |u|^2 = u conj(u) up to `order`.
std::vector<GridFunction> modulus_jet(const TimeJet& jet, int order) {
  std::vector<GridFunction> out;
  const auto& g = jet.layers.front().grid();
  for (int m = 0; m <= order; ++m) {
    GridFunction c(g);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      const auto& a = jet.layers[j];
      const auto& b = jet.layers[m - j];
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += binom * a[i] * std::conj(b[i]);
      binom = binom * (m - j) / (j + 1);
    }
    out.push_back(std::move(c));
  }
  return out;
}

void finish(EnergyBreakdown& e) {
  e.total = e.leading;
  for (const auto& [name, v] : e.corrections) e.total += v;
}

}  // namespace

nlohmann::json to_json(const EnergyBreakdown& e) {
  nlohmann::json corr = nlohmann::json::object();
  for (const auto& [name, v] : e.corrections) corr[name] = v;
  return {{"leading_name", e.leading_name},
          {"leading", e.leading},
          {"corrections", corr},
          {"total", e.total}};
}

EnergyBreakdown modified_energy_even(const GridFunction& u, int k, const ModelParams& params) {
  if (k < 1) throw ArgumentError("modified_energy_even: k must be >= 1");
  const auto jet = time_jet(u, k, params);
  const auto& g = u.grid();
  EnergyBreakdown e;
  e.leading_name = "dt^" + std::to_string(k) + " u L2^2";
  e.leading = mass(jet.layers[k]);

  const auto nl = nonlinearity_jet(jet, k - 1, params);
  e.corrections.emplace_back("nonlinear_jet", -mass(nl[k - 1]));

  const auto mod = modulus_jet(jet, k - 1);
  const int half = (params.p - 1) / 2;
  double acc = 0.0;
  for (int j = 1; j <= g.dim(); ++j) {
    const auto grad = forward_difference(mod[k - 1], j);
    for (std::size_t i = 0; i < g.size(); ++i) {
      const Complex here = u[i];
      const Complex next = u[g.shifted(i, j - 1, +1)];
      double w = 0.0;
      for (int l = 1; l <= half; ++l) w += modulus2_power(here, half - l) * modulus2_power(next, l - 1);
      acc += std::norm(grad[i]) * w;
    }
  }
  e.corrections.emplace_back("modulus_gradient", -0.5 * params.lambda * g.cell_volume() * acc);
  finish(e);
  return e;
}

EnergyBreakdown modified_energy_odd(const GridFunction& u, int k, const ModelParams& params) {
  if (k != 1) throw UnsupportedOrderError("modified_energy_odd: unsupported order k = " + std::to_string(k));
  const auto jet = time_jet(u, 1, params);
  const auto& g = u.grid();
  const auto& ut = jet.layers[1];
  EnergyBreakdown e;
  e.leading_name = "1/2 D+ dt u L2^2";
  for (int j = 1; j <= g.dim(); ++j) e.leading += 0.5 * mass(forward_difference(ut, j));

  const auto mod = modulus_jet(jet, 1);
  const int half = (params.p - 1) / 2;
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    a += modulus2_power(u[i], half) * std::norm(ut[i]);
    // |u|^{p-3} with |u|^0 = 1.
    b += modulus2_power(u[i], half - 1) * std::norm(mod[1][i]);
  }
  const double vol = g.cell_volume();
  e.corrections.emplace_back("potential_weight", params.lambda * 0.5 * vol * a);
  e.corrections.emplace_back("modulus_rate", params.lambda * (params.p - 1) / 8.0 * vol * b);
  finish(e);
  return e;
}

JetGap jet_laplacian_gap(const GridFunction& u, int k, double s, const ModelParams& params) {
  if (k < 0) throw ArgumentError("jet_laplacian_gap: k must be >= 0");
  const auto jet = time_jet(u, k, params);
  GridFunction lin = u;
  Complex ik = 1.0;
  for (int n = 0; n < k; ++n) {
    lin = apply_laplacian(lin);
    ik *= Complex(0.0, 1.0);
  }
  lin *= ik;
  return {sobolev_norm(jet.layers[k] - lin, SobolevIndex(s)),
          sobolev_norm(u, SobolevIndex(s + 2.0 * k - 1.0))};
}

double gagliardo_nirenberg_ratio(const GridFunction& u, double q, double s) {
  const int d = u.grid().dim();
  if (!(q >= 2.0)) throw ArgumentError("gagliardo_nirenberg_ratio: q must be >= 2");
  if (!(s > 0.0)) throw ArgumentError("gagliardo_nirenberg_ratio: s must be positive");
  const double inv_q = std::isinf(q) ? 0.0 : 1.0 / q;
  const double theta = d / s * (0.5 - inv_q);
  if (!(theta > 0.0 && theta < 1.0))
    throw ArgumentError("gagliardo_nirenberg_ratio: theta must lie in (0, 1)");
  const double num = lp_norm(u, q);
  const double l2 = lp_norm(u, 2.0);
  const double hs = homogeneous_sobolev_norm(u, SobolevIndex(s));
  if (l2 == 0.0 || hs == 0.0) throw ArgumentError("gagliardo_nirenberg_ratio: degenerate input");
  return num / (std::pow(l2, 1.0 - theta) * std::pow(hs, theta));
}

bool strichartz_admissible(double q, double r, int d) {
  if (d != 1 && d != 2) return false;
  if (!(q >= 2.0) || std::isinf(q) || !(r >= 2.0)) return false;
  const double inv_r = std::isinf(r) ? 0.0 : 1.0 / r;
  return std::abs(3.0 / q + d * inv_r - 0.5 * d) <= 1e-12;
}

double strichartz_ratio(const GridFunction& u0, double q, double r, double T, int intervals) {
  const auto& g = u0.grid();
  if (!strichartz_admissible(q, r, g.dim()))
    throw ArgumentError("strichartz_ratio: (q, r) is not admissible");
  if (!(T > 0.0)) throw ArgumentError("strichartz_ratio: T must be positive");
  if (intervals < 2) throw ArgumentError("strichartz_ratio: need at least 2 intervals");
  const auto spec = dft(u0);
  const auto sigma = sine_multiplier(g);
  double integral = 0.0;
  for (int i = 0; i <= intervals; ++i) {
    const double t = T * i / intervals;
    SpectrumFunction evolved(g);
    for (std::size_t m = 0; m < spec.size(); ++m)
      evolved[m] = spec[m] * std::polar(1.0, -t * sigma[m].real());
    const double w = (i == 0 || i == intervals) ? 0.5 : 1.0;
    integral += w * std::pow(lp_norm(idft(evolved), r), q);
  }
  integral *= T / intervals;
  const double denom = sobolev_norm(u0, SobolevIndex(1.0 / q));
  if (denom == 0.0) throw ArgumentError("strichartz_ratio: zero data");
  return std::pow(integral, 1.0 / q) / denom;
}

double bilinear_linf_ratio(const GridFunction& f, const GridFunction& g, double eps) {
  require_same_grid(f.grid(), g.grid(), "bilinear_linf_ratio");
  if (!(eps > 0.0 && eps < 1.0)) throw ArgumentError("bilinear_linf_ratio: eps must lie in (0, 1)");
  GridFunction fg = f;
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] *= g[i];
  auto factor = [eps](const GridFunction& v) {
    return std::pow(sobolev_norm(v, SobolevIndex(1.0)), 1.0 - eps) *
           std::pow(sobolev_norm(v, SobolevIndex(2.0)), eps);
  };
  const double denom = factor(f) * factor(g);
  if (denom == 0.0) throw ArgumentError("bilinear_linf_ratio: zero factor");
  return lp_norm(fg, std::numeric_limits<double>::infinity()) / denom;
}

double product_estimate_ratio(const GridFunction& f, const GridFunction& g, double s, double s1,
                              double s2) {
  require_same_grid(f.grid(), g.grid(), "product_estimate_ratio");
  const int d = f.grid().dim();
  if (!(s <= s1 && s <= s2 && s < s1 + s2 - 0.5 * d))
    throw ArgumentError("product_estimate_ratio: need s <= min(s1, s2) and s < s1 + s2 - d/2");
  const auto sf = shannon_interpolate(f, 1);
  const auto sg = shannon_interpolate(g, 1);
  GridFunction prod = sf.samples();
  for (std::size_t i = 0; i < prod.size(); ++i) prod[i] *= sg.samples()[i];
  const double denom = continuum_sobolev_norm(sf, s1) * continuum_sobolev_norm(sg, s2);
  if (denom == 0.0) throw ArgumentError("product_estimate_ratio: zero factor");
  return continuum_sobolev_norm(ContinuumField(std::move(prod)), s) / denom;
}

void GrowthSeries::write_csv(std::ostream& os) const {
  os << "t,Hm_norm\n" << std::setprecision(17);
  for (std::size_t i = 0; i < times.size(); ++i) os << times[i] << ',' << norms[i] << '\n';
}

GrowthSeries growth_track(const GridFunction& u0, int m, double T, int samples,
                          const Integrator& integrator) {
  if (m < 1) throw ArgumentError("growth_track: m must be >= 1");
  if (samples < 4) throw ArgumentError("growth_track: need at least 4 samples");
  if (!(T > 0.0)) throw ArgumentError("growth_track: T must be positive");
  GrowthSeries series;
  series.m = m;
  series.window_start = 0.5 * T;
  IntegrationOptions options;
  options.samples = samples;
  options.observers.push_back([&series, m](double t, const GridFunction& u) {
    series.times.push_back(t);
    series.norms.push_back(sobolev_norm(u, SobolevIndex(m)));
  });
  integrate(u0, integrator, T, options);
  std::vector<std::pair<double, double>> tail;
  for (std::size_t i = 0; i < series.times.size(); ++i)
    if (series.times[i] >= series.window_start && series.times[i] > 0.0)
      tail.emplace_back(series.times[i], series.norms[i]);
  series.fit_exponent = fit_loglog_slope(tail).slope;
  return series;
}

}  // namespace dnls
