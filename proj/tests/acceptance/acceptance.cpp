// Runs the twelve acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "dnls/energies.hpp"
#include "dnls/harness.hpp"
#include "../support.hpp"

using namespace dnls;
using namespace dnls::testing;

namespace {

const std::filesystem::path kConfigs = DNLS_CONFIG_DIR;
const std::string kCli = DNLS_CLI_PATH;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

ExperimentConfig config(const std::string& name) { return load_config((kConfigs / name).string()); }

double slope(const ExperimentReport& r, const std::string& channel) { return r.find(channel)->fit->slope; }

// 1
Outcome exact_identities() {
  double worst = 0.0;
  std::uint64_t seed = 100;
  for (int d : {1, 2}) {
    for (int n : {64, 128}) {
      const LatticeGrid g(d, 0.1, n);
      for (int trial = 0; trial < 100; ++trial) {
        const auto u = random_field(g, seed++);
        const auto v = random_field(g, seed++);
        const double nu = lp_norm(u, 2.0);

        const auto back = pointwise_project(shannon_interpolate(u, 1), g);
        worst = std::max(worst, lp_norm(back - u, 2.0) / nu);

        worst = std::max(worst, rel(spectral_l2_norm2(dft(u)), nu * nu));

        GridFunction factored(g);
        for (int j = 1; j <= d; ++j) factored += backward_difference(forward_difference(u, j), j);
        const auto lap = apply_laplacian(u);
        worst = std::max(worst, lp_norm(lap - factored, 2.0) / lp_norm(lap, 2.0));

        Complex grad(0.0);
        double scale = 0.0;
        for (int j = 1; j <= d; ++j) {
          const auto du = forward_difference(u, j), dv = forward_difference(v, j);
          grad += inner_product(du, dv);
          scale += lp_norm(du, 2.0) * lp_norm(dv, 2.0);
        }
        worst = std::max(worst, std::abs(-inner_product(lap, v) - grad) / scale);

        worst = std::max(worst, rel(lp_norm(linear_flow(u, 0.37 + trial), 2.0), nu));
      }
    }
  }
  return {worst <= 1e-12, "max relative defect " + fmt("%.2e", worst)};
}

// 2
Outcome mass_conservation() {
  const LatticeGrid g(1, 0.2, 256);
  const auto u0 = gaussian(g, 1.0, 1.5);
  const auto u = integrate(u0, Integrator(ModelParams(3, 1.0, 1), 1e-3), 10.0);
  const double drift = std::abs(mass(u) - mass(u0)) / mass(u0);
  return {drift <= 1e-11, "relative drift over 1e4 steps " + fmt("%.2e", drift)};
}

// 3
Outcome energy_order() {
  const ModelParams params(3, 1.0, 1);
  const auto g = LatticeGrid::from_half_width(1, 0.2, 25.6);
  const auto u0 = gaussian(g, std::sqrt(2.0), 1.0);
  const double e0 = energy(u0, params);
  const double a = std::abs(energy(integrate(u0, Integrator(params, 0.01), 5.0), params) - e0);
  const double b = std::abs(energy(integrate(u0, Integrator(params, 0.005), 5.0), params) - e0);
  const double ratio = a / b;
  return {std::abs(ratio - 4.0) <= 1.0, "drift ratio " + fmt("%.3f", ratio)};
}

// 4
Outcome sandwich() {
  double margin = INFINITY;
  for (int d : {1, 2}) {
    const LatticeGrid g(d, 0.1, d == 1 ? 128 : 32);
    for (int trial = 0; trial < 50; ++trial) {
      const auto u = random_field(g, 500 + trial);
      const auto su = shannon_interpolate(u, 1);
      for (double s : {0.0, 0.5, 1.0, 2.0}) {
        const double lattice = sobolev_norm(u, SobolevIndex(s));
        const double cont = continuum_sobolev_norm(su, s);
        margin = std::min(margin, (cont - lattice) / lattice);
        margin = std::min(margin, (std::pow(M_PI / 2, s) * lattice - cont) / lattice);
      }
    }
  }
  return {margin >= -1e-10, "smallest relative margin " + fmt("%.2e", margin)};
}

// 5
Outcome interpolation_rates() {
  std::string detail;
  bool ok = true;
  for (const char* name : {"interp_s0.ini", "interp_s1.ini"}) {
    const auto c = config(name);
    const auto r = run_interp_test(c);
    for (const char* ch : {"projection", "roundtrip", "aliasing"}) {
      const double k = slope(r, ch);
      ok = ok && k >= c.delta - c.s - 0.2;
      detail += std::string(ch) + "(s=" + fmt("%g", c.s) + ") " + fmt("%.3f", k) + "  ";
    }
  }
  return {ok, detail};
}

// 6
Outcome linear_flow_rate() {
  const auto rough = run_linear_flow(config("linear_flow.ini"));
  const auto smooth = run_linear_flow(config("linear_flow_smooth.ini"));
  const double a = slope(rough, "error"), b = slope(smooth, "error");
  return {a >= 0.60 && std::abs(b - 2.0) <= 0.2, "delta=2.1 slope " + fmt("%.3f", a) + ", smooth slope " + fmt("%.3f", b)};
}

// 7
Outcome continuum_limit() {
  const auto defoc = run_convergence(config("converge_defocusing.ini"));
  const auto sol = run_convergence(config("converge_soliton.ini"));
  const double a = slope(defoc, "total"), b = slope(sol, "total");
  const double terminal = sol.find("total")->values.back();
  return {a >= 0.60 && b >= 1.8 && terminal <= 1e-2,
          "defocusing slope " + fmt("%.3f", a) + ", soliton slope " + fmt("%.3f", b) + ", soliton error at h=0.025 " +
              fmt("%.2e", terminal)};
}

// 8
Outcome growth_bounds() {
  const auto c = config("growth.ini");
  const auto r = run_growth(c);
  const double h1 = slope(r, "H1"), h2 = slope(r, "H2");
  const int n = LatticeGrid::from_half_width(1, c.growth_h, c.half_width).points_per_axis();
  return {n == 256 && c.T == 100.0 && h1 <= 0.1 && h2 <= 2.5,
          "N=" + std::to_string(n) + ", H1 exponent " + fmt("%.4f", h1) + ", H2 exponent " + fmt("%.4f", h2)};
}

// 9
Outcome jets() {
  const auto g = LatticeGrid::from_half_width(1, 0.1, 12.8);
  const ModelParams params(3, 1.0, 1);
  const auto u = GridFunction::from_function(g, [](std::span<const double> a) {
    return 0.8 * std::exp(-a[0] * a[0]) * std::polar(1.0, 0.7 * a[0] + 0.3 * a[0] * a[0] * a[0] / (1 + a[0] * a[0]));
  });
  const auto jet = time_jet(u, 2, params);
  const double eps = 1e-4;
  const Integrator integ(params, eps);
  const auto plus = integrate(u, integ, eps);
  const auto minus = integrate(u.conj(), integ, eps).conj();
  auto d1 = plus - minus;
  d1 *= 1.0 / (2 * eps);
  auto d2 = plus + minus - 2.0 * u;
  d2 *= 1.0 / (eps * eps);
  const double e1 = lp_norm(d1 - jet.layers[1], 2.0) / lp_norm(jet.layers[1], 2.0);
  const double e2 = lp_norm(d2 - jet.layers[2], 2.0) / lp_norm(jet.layers[2], 2.0);

  const auto lin = time_jet(u, 2, ModelParams(3, 0.0, 1));
  double e0 = 0.0;
  GridFunction ref = u;
  for (int k = 1; k <= 2; ++k) {
    ref = Complex(0.0, 1.0) * apply_laplacian(ref);
    e0 = std::max(e0, lp_norm(lin.layers[k] - ref, INFINITY) / lp_norm(ref, INFINITY));
  }
  return {e1 <= 1e-5 && e2 <= 1e-3 && e0 <= 1e-10,
          "k=1 " + fmt("%.2e", e1) + ", k=2 " + fmt("%.2e", e2) + ", linear " + fmt("%.2e", e0)};
}

// 10
Outcome modified_energies() {
  const ModelParams linear(3, 0.0, 1), cubic(3, 1.0, 1);
  const auto g = LatticeGrid::from_half_width(1, 0.2, 25.6);
  const auto u0 = GridFunction::from_function(g, [](std::span<const double> a) {
    return std::exp(-a[0] * a[0] / 2.25) * std::polar(1.0, 0.8 * a[0]);
  });
  const auto u1 = integrate(u0, Integrator(linear, 0.01), 1.0);
  const double lin2 = std::abs(modified_energy_even(u1, 1, linear).total - modified_energy_even(u0, 1, linear).total);
  const double lin3 = std::abs(modified_energy_odd(u1, 1, linear).total - modified_energy_odd(u0, 1, linear).total);

  auto small = gaussian(g, 1.0, 6.0);
  small *= 0.01 / sobolev_norm(small, SobolevIndex(1.0));
  const auto small_T = integrate(small, Integrator(cubic, 0.004), 1.0);
  const auto a = modified_energy_even(small, 1, cubic), b = modified_energy_even(small_T, 1, cubic);
  const double nl = std::abs(b.total - a.total) / std::abs(a.leading);

  double worst_trend = 0.0;
  for (int k : {1, 2}) {
    std::vector<std::pair<double, double>> pts;
    for (double h : {0.2, 0.1, 0.05, 0.025}) {
      const auto gh = LatticeGrid::from_half_width(1, h, 12.8);
      const auto u = GridFunction::from_function(gh, [](std::span<const double> x) {
        return 0.5 * std::exp(-x[0] * x[0] / 2.25) * std::polar(1.0, 0.8 * x[0]);
      });
      const auto gap = jet_laplacian_gap(u, k, 0.0, cubic);
      pts.emplace_back(h, gap.gap / gap.bound_ref);
    }
    worst_trend = std::max(worst_trend, std::abs(fit_loglog_slope(pts).slope));
  }
  return {lin2 <= 1e-10 && lin3 <= 1e-10 && nl <= 1e-6 && worst_trend <= 0.15,
          "linear drifts " + fmt("%.1e", lin2) + "/" + fmt("%.1e", lin3) + ", small-amplitude E2 " + fmt("%.2e", nl) +
              ", gap trend " + fmt("%.3f", worst_trend)};
}

// 11
Outcome functional_checks() {
  const auto r = run_functional_check(config("functional_check.ini"));
  bool ok = true;
  std::string detail;
  for (const auto& c : r.channels) {
    if (c.name != "gagliardo_nirenberg" && c.name.rfind("strichartz", 0) != 0) continue;
    ok = ok && std::abs(c.fit->slope) <= 0.15;
    detail += c.name + " " + fmt("%.4f", c.fit->slope) + "  ";
  }
  for (const auto& c : r.checks)
    if (c.name == "admissibility_mismatches") {
      ok = ok && c.passed();
      detail += "table mismatches " + fmt("%g", c.value);
    }
  return {ok, detail};
}

// 12
Outcome determinism() {
  const auto base = std::filesystem::temp_directory_path() / "dnls_acceptance_determinism";
  std::filesystem::remove_all(base);
  auto run = [&](int jobs) {
    const auto out = base / ("jobs" + std::to_string(jobs));
    const std::string cmd = "\"" + kCli + "\" converge --config \"" + (kConfigs / "converge_defocusing.ini").string() +
                            "\" --out \"" + out.string() + "\" --jobs " + std::to_string(jobs) + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    std::ifstream in(out / "report.json", std::ios::binary);
    return std::make_pair(rc, std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
  };
  const auto [rc1, one] = run(1);
  const auto [rc8, eight] = run(8);
  const bool identical = !one.empty() && one == eight;
  return {rc1 == 0 && rc8 == 0 && identical,
          "exit codes " + std::to_string(rc1) + "/" + std::to_string(rc8) + ", reports " +
              (identical ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double limit_s;  // runtime budget; 0 when none is set
    std::function<Outcome()> run;
  };
  const Criterion criteria[] = {
      {"exact identities", 10, exact_identities},
      {"mass conservation", 30, mass_conservation},
      {"energy near-conservation", 60, energy_order},
      {"norm sandwich", 0, sandwich},
      {"interpolation rates", 120, interpolation_rates},
      {"linear-flow rate", 120, linear_flow_rate},
      {"continuum-limit rate", 600, continuum_limit},
      {"growth bounds", 600, growth_bounds},
      {"jet correctness", 0, jets},
      {"modified energies", 0, modified_energies},
      {"functional checks", 0, functional_checks},
      {"determinism", 0, determinism},
  };
  int failed = 0, index = 0;
  for (const auto& c : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = c.limit_s == 0 || secs < c.limit_s;
    const bool pass = o.pass && in_time;
    failed += !pass;
    std::printf("%s  %2d %-26s %s (%.1f s%s)\n", pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs,
                in_time ? "" : ", over budget");
    std::fflush(stdout);
  }
  return failed;
}
