#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dnls/harness.hpp"
#include "support.hpp"

using namespace dnls;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream is(text);
  return parse_config(is);
}

const char* kInterp = R"(
[experiment]
kind = interp-test
seed = 1
[model]
d = 1
[data]
profile = decay
delta = 2
s = 0
[sweep]
h_values = 0.2, 0.1, 0.05, 0.025
half_width = 25.6
)";

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("dnls_test_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("log-log slope fit") {
  const std::vector<std::pair<double, double>> quad{{1, 1}, {0.5, 0.25}, {0.25, 0.0625}};
  const auto q = fit_loglog_slope(quad);
  CHECK(q.slope == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(q.r2 == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(q.warnings.empty());

  const std::vector<std::pair<double, double>> flat{{1, 3}, {0.5, 3}, {0.25, 3}};
  CHECK(std::abs(fit_loglog_slope(flat).slope) < 1e-14);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  std::vector<std::pair<double, double>> noisy;
  for (double h = 1.0; h > 1e-3; h *= 0.5) noisy.emplace_back(h, 3.0 * std::pow(h, 1.5) * (1 + 0.01 * noise(rng)));
  CHECK(fit_loglog_slope(noisy).slope == doctest::Approx(1.5).epsilon(0.05 / 1.5));

  CHECK_THROWS_AS(fit_loglog_slope(std::vector<std::pair<double, double>>{{1, 1}, {0.5, 1}}), ArgumentError);
  const std::vector<std::pair<double, double>> with_zero{{1, 1}, {0.5, 0.0}, {0.25, 0.01}};
  const auto z = fit_loglog_slope(with_zero);
  CHECK(z.warnings.size() == 1);
  CHECK(std::isfinite(z.slope));
}

TEST_CASE("config parsing") {
  const auto c = parse(kInterp);
  CHECK(c.kind == ExperimentKind::interp_test);
  CHECK(c.h_values.size() == 4);
  CHECK(c.h_values[3] == 0.025);
  CHECK(c.delta == 2.0);
  CHECK(c.refinement == 3);
  CHECK(c.tau_for(0.2) == doctest::Approx(0.004));
  CHECK(parse_kind("functional-check") == ExperimentKind::functional_check);
  CHECK(to_string(ExperimentKind::linear_flow) == "linear-flow");

  const auto j = to_json(c);
  CHECK(j["kind"] == "interp-test");
  CHECK_FALSE(j.contains("output"));
}

TEST_CASE("config validation") {
  auto with = [](const std::string& from, const std::string& to) {
    std::string s = kInterp;
    const auto at = s.find(from);
    REQUIRE(at != std::string::npos);
    return s.replace(at, from.size(), to);
  };
  CHECK_THROWS_AS(parse(with("kind = interp-test", "")), ConfigError);
  CHECK_THROWS_AS(parse(with("kind = interp-test", "kind = sweep")), ConfigError);
  CHECK_THROWS_AS(parse(with("0.2, 0.1, 0.05, 0.025", "0.2, 0.1")), ConfigError);
  CHECK_THROWS_AS(parse(with("0.2, 0.1, 0.05, 0.025", "0.2, 0.1, 0.04")), ConfigError);
  CHECK_THROWS_AS(parse(with("0.2, 0.1, 0.05, 0.025", "0.1, 0.2, 0.4")), ConfigError);
  CHECK_THROWS_AS(parse(with("s = 0", "s = 1.5")), ConfigError);
  CHECK_THROWS_AS(parse(with("s = 0", "s = -0.1")), ConfigError);
  CHECK_NOTHROW(parse(with("s = 0", "s = 1.4")));
  CHECK_THROWS_AS(parse(with("seed = 1", "seed = 1\nsamplez = 3")), ConfigError);
  CHECK_THROWS_AS(parse(with("[model]", "[modle]")), ConfigError);
  CHECK_THROWS_AS(parse(with("delta = 2", "delta = two")), ConfigError);
  CHECK_THROWS_AS(parse(with("d = 1", "d = 1\nlambda = -1\np = 5")), ConfigError);
  CHECK_THROWS_AS(parse(with("profile = decay", "profile = soliton")), ConfigError);
  CHECK_THROWS_AS(parse(with("half_width = 25.6", "half_width = 25.61")), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/cfg.ini"), ConfigError);
}

TEST_CASE("parallel_for covers every index and reports the first failure") {
  for (int jobs : {1, 3, 8}) {
    std::vector<int> hits(50, 0);
    parallel_for(hits.size(), jobs, [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    try {
      parallel_for(20, jobs, [](std::size_t i) {
        if (i == 7 || i == 13) throw std::runtime_error(std::to_string(i));
      });
      FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
      CHECK(std::string(e.what()) == "7");
    }
  }
}

TEST_CASE("reports are independent of the worker count") {
  const auto c = parse(kInterp);
  RunOptions one, many;
  many.jobs = 4;
  const auto a = run_interp_test(c, one).to_json().dump();
  const auto b = run_interp_test(c, many).to_json().dump();
  CHECK(a == b);
}

TEST_CASE("report layout") {
  const auto r = run_interp_test(parse(kInterp));
  const auto j = r.to_json();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  CHECK(keys == std::vector<std::string>{"channels", "config", "exponents", "pass", "runtime_s", "slopes"});
  CHECK(j["runtime_s"].is_null());
  CHECK(j["pass"] == true);
  CHECK(j["exponents"]["roundtrip"]["target"] == 2.0);
  CHECK(j["exponents"]["roundtrip"]["rule"] == "delta - s");

  const auto dir = scratch("layout");
  write_report(r, dir, "csv");
  const auto csv = slurp(dir / "interp-test.csv");
  CHECK(csv.rfind("h,projection,roundtrip,aliasing,", 0) == 0);
  std::istringstream rows(csv);
  std::string header, first;
  std::getline(rows, header);
  std::getline(rows, first);
  CHECK(first.rfind("0.20000000000000001,", 0) == 0);
  CHECK(slurp(dir / "interp-test.gp").find("'interp-test.csv' using 1:2") != std::string::npos);
  const auto json_dir = scratch("layout_json");
  write_report(r, json_dir, "json");
  CHECK(std::filesystem::exists(json_dir / "report.json"));
  CHECK_FALSE(std::filesystem::exists(json_dir / "interp-test.csv"));
}

TEST_CASE("band-limited data give a degenerate pass") {
  std::string text = kInterp;
  text.replace(text.find("profile = decay"), 15, "profile = gaussian\nwidth = 1.5");
  const auto r = run_interp_test(parse(text));
  CHECK(r.degenerate);
  CHECK(r.pass());
  CHECK(r.status() == "degenerate-pass");
  for (const auto& c : r.channels)
    for (double v : c.values) CHECK(v <= 1e-10);
}

TEST_CASE("linear flow at t = 0 is the round-trip residual") {
  std::string text = kInterp;
  text.replace(text.find("kind = interp-test"), 18, "kind = linear-flow\nT = 0");
  const auto c = parse(text);
  const auto lf = run_linear_flow(c);
  const auto fine = fine_grid_for(c, c.refinement);
  const auto f = initial_datum(c, fine);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < c.h_values.size(); ++i) {
    const auto coarse = LatticeGrid::from_half_width(1, c.h_values[i], c.half_width);
    const double rt = roundtrip_residual(f, coarse, 0.0).total;
    CHECK(lf.channels[0].values[i] == doctest::Approx(rt).epsilon(1e-10));
    pts.emplace_back(c.h_values[i], rt);
  }
  CHECK(std::abs(lf.channels[0].fit->slope - fit_loglog_slope(pts).slope) <= 0.05);
}

TEST_CASE("linear-flow exponent rules") {
  std::string text = kInterp;
  text.replace(text.find("kind = interp-test"), 18, "kind = linear-flow");
  auto c = parse(text);
  CHECK(flow_rate_exponent(c) == doctest::Approx(0.75));
  c.delta = 8.0;
  CHECK(flow_rate_exponent(c) == 2.0);
}

TEST_CASE("converge with lambda = 0 reduces to the linear-flow experiment") {
  const std::string text = R"(
[experiment]
kind = converge
T = 1
refinement = 2
samples = 8
[model]
p = 3
lambda = 0
d = 1
[data]
profile = decay
delta = 2.1
[sweep]
h_values = 0.2, 0.1, 0.05
half_width = 12.8
)";
  auto c = parse(text);
  const auto conv = run_convergence(c);
  for (const char* name : {"J2", "J3"})
    for (double v : conv.find(name)->values) CHECK(v == 0.0);
  c.kind = ExperimentKind::linear_flow;
  const auto lin = run_linear_flow(c);
  CHECK(std::abs(conv.find("total")->fit->slope - lin.channels[0].fit->slope) <= 0.05);
  for (std::size_t i = 0; i < 3; ++i) {
    const double total = conv.find("total")->values[i];
    double sum = 0.0;
    for (const char* name : {"J1", "J2", "J3", "J4"}) sum += conv.find(name)->values[i];
    CHECK(std::abs(total - sum) <= 1e-15 * total);
  }
}

TEST_CASE("growth of the linear flow is flat") {
  const std::string text = R"(
[experiment]
kind = growth
T = 10
samples = 20
[model]
lambda = 0
[data]
profile = gaussian
[sweep]
half_width = 12.8
[growth]
h = 0.2
orders = 1, 2, 3
)";
  const auto r = run_growth(parse(text));
  REQUIRE(r.channels.size() == 3);
  for (const auto& c : r.channels) {
    CHECK(c.fit->slope <= 0.02);
    CHECK(c.tolerance == 0.02);
  }
  CHECK(r.pass());
  CHECK(r.tables.size() == 3);
  CHECK(r.tables[0].header == std::vector<std::string>{"t", "Hm_norm"});
}

TEST_CASE("simulate echoes its input at T = 0") {
  const auto dir = scratch("simulate");
  std::filesystem::create_directories(dir);
  const auto g = LatticeGrid::from_half_width(1, 0.1, 6.4);
  save_binary((dir / "in.bin").string(), testing::gaussian(g, 1.0, 1.0));
  const std::string text = "[experiment]\nkind = simulate\nT = 0\n[simulate]\ninput = " +
                           (dir / "in.bin").string() + "\n";
  RunOptions opt;
  opt.out_dir = dir / "out";
  const auto r = run_simulate(parse(text), opt);
  CHECK(r.pass());
  CHECK(slurp(dir / "in.bin") == slurp(dir / "out" / "state.bin"));

  const std::string moving = "[experiment]\nkind = simulate\nT = 0.5\nsamples = 5\n[simulate]\ninput = " +
                             (dir / "in.bin").string() + "\ntau = 0.01\n";
  const auto s = run_simulate(parse(moving), opt);
  CHECK(s.scalars["mass_drift"].get<double>() <= 1e-12);
  const auto out = load_binary((dir / "out" / "state.bin").string());
  CHECK(out.grid() == g);
  REQUIRE(s.tables.size() == 1);
  CHECK(s.tables[0].columns[0].size() == 6);
}
