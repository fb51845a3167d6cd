#include "dnls/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace dnls {

namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>> kSchema = {
    {"experiment", {"kind", "seed", "T", "tau_factor", "samples", "refinement", "max_terminal_error"}},
    {"model", {"p", "lambda", "d"}},
    {"data", {"profile", "delta", "s", "amplitude", "width", "x0"}},
    {"sweep", {"h_values", "half_width"}},
    {"growth", {"h", "orders"}},
    {"simulate", {"input", "tau", "h"}},
    {"output", {"dir", "format"}},
};

const std::pair<ExperimentKind, const char*> kKindNames[] = {
    {ExperimentKind::converge, "converge"},
    {ExperimentKind::linear_flow, "linear-flow"},
    {ExperimentKind::interp_test, "interp-test"},
    {ExperimentKind::aliasing, "aliasing"},
    {ExperimentKind::growth, "growth"},
    {ExperimentKind::functional_check, "functional-check"},
    {ExperimentKind::simulate, "simulate"},
};

template <typename T>
T get(const pt::ptree& tree, const std::string& key, T fallback) {
  const auto node = tree.get_optional<std::string>(key);
  if (!node) return fallback;
  std::istringstream is(*node);
  T value{};
  is >> value;
  if (is.fail() || !(is >> std::ws).eof())
    throw ConfigError("config: cannot parse " + key + " = '" + *node + "'");
  return value;
}

template <typename T>
std::vector<T> get_list(const pt::ptree& tree, const std::string& key, std::vector<T> fallback) {
  const auto node = tree.get_optional<std::string>(key);
  if (!node) return fallback;
  std::vector<T> out;
  std::stringstream ss(*node);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T value{};
    is >> value;
    if (is.fail() || !(is >> std::ws).eof())
      throw ConfigError("config: cannot parse list entry '" + item + "' of " + key);
    out.push_back(value);
  }
  return out;
}

Profile parse_profile(const std::string& name) {
  if (name == "decay") return Profile::decay;
  if (name == "soliton") return Profile::soliton;
  if (name == "gaussian") return Profile::gaussian;
  throw ConfigError("config: unknown data.profile '" + name + "'");
}

bool is_sweep(ExperimentKind kind) {
  return kind != ExperimentKind::growth && kind != ExperimentKind::simulate;
}

bool needs_regularity_gap(ExperimentKind kind) {
  return kind == ExperimentKind::converge || kind == ExperimentKind::linear_flow ||
         kind == ExperimentKind::interp_test || kind == ExperimentKind::aliasing;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
  for (const auto& [k, name] : kKindNames)
    if (k == kind) return name;
  return "?";
}

ExperimentKind parse_kind(const std::string& name) {
  for (const auto& [k, n] : kKindNames)
    if (name == n) return k;
  throw ConfigError("unknown experiment kind '" + name + "'");
}

std::string to_string(Profile profile) {
  switch (profile) {
    case Profile::decay: return "decay";
    case Profile::soliton: return "soliton";
    case Profile::gaussian: return "gaussian";
  }
  return "?";
}

ExperimentConfig parse_config(std::istream& is) {
  pt::ptree tree;
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto known = kSchema.find(section);
    if (known == kSchema.end()) throw ConfigError("config: unknown section [" + section + "]");
    for (const auto& [key, value] : body)
      if (!known->second.count(key)) throw ConfigError("config: unknown key " + section + "." + key);
  }

  ExperimentConfig c;
  if (!tree.get_optional<std::string>("experiment.kind")) throw ConfigError("config: experiment.kind is required");
  c.kind = parse_kind(tree.get<std::string>("experiment.kind"));
  c.seed = get<std::uint64_t>(tree, "experiment.seed", c.seed);
  c.T = get<double>(tree, "experiment.T", c.T);
  c.tau_factor = get<double>(tree, "experiment.tau_factor", c.tau_factor);
  c.samples = get<int>(tree, "experiment.samples", c.samples);
  c.refinement = get<int>(tree, "experiment.refinement", c.refinement);
  if (tree.get_optional<std::string>("experiment.max_terminal_error"))
    c.max_terminal_error = get<double>(tree, "experiment.max_terminal_error", 0.0);

  const int p = get<int>(tree, "model.p", 3);
  const double lambda = get<double>(tree, "model.lambda", 1.0);
  const int d = get<int>(tree, "model.d", 1);
  try {
    c.params = ModelParams(p, lambda, d);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }

  c.profile = parse_profile(tree.get<std::string>("data.profile", "decay"));
  c.delta = get<double>(tree, "data.delta", c.delta);
  c.s = get<double>(tree, "data.s", c.s);
  c.amplitude = get<double>(tree, "data.amplitude", c.amplitude);
  c.width = get<double>(tree, "data.width", c.width);
  c.x0 = get<double>(tree, "data.x0", c.x0);

  c.h_values = get_list<double>(tree, "sweep.h_values", {});
  c.half_width = get<double>(tree, "sweep.half_width", c.half_width);

  c.growth_h = get<double>(tree, "growth.h", c.growth_h);
  c.growth_orders = get_list<int>(tree, "growth.orders", c.growth_orders);

  c.simulate_input = tree.get<std::string>("simulate.input", "");
  if (tree.get_optional<std::string>("simulate.tau")) c.simulate_tau = get<double>(tree, "simulate.tau", 0.0);
  c.simulate_h = get<double>(tree, "simulate.h", c.simulate_h);

  c.output_dir = tree.get<std::string>("output.dir", c.output_dir);
  c.format = tree.get<std::string>("output.format", c.format);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  return parse_config(in);
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& msg) { throw ConfigError("config: " + msg); };
  if (!(T >= 0.0) || !std::isfinite(T)) fail("T must be finite and >= 0");
  if (!(tau_factor > 0.0)) fail("tau_factor must be positive");
  if (samples < 1) fail("samples must be >= 1");
  if (refinement < 1 || refinement > 6) fail("refinement must be in [1, 6]");
  if (format != "csv" && format != "json") fail("output.format must be csv or json");
  if (!(half_width > 0.0)) fail("half_width must be positive");
  if (profile == Profile::soliton && (params.lambda != -1.0 || params.d != 1 || params.p != 3))
    fail("soliton data requires lambda = -1, d = 1, p = 3");
  if (profile == Profile::gaussian && !(width > 0.0)) fail("width must be positive");

  if (is_sweep(kind)) {
    if (h_values.size() < 3) fail("h_values needs at least 3 entries");
    for (std::size_t i = 0; i < h_values.size(); ++i) {
      if (!(h_values[i] > 0.0)) fail("h_values must be positive");
      if (i > 0 && std::abs(h_values[i] - 0.5 * h_values[i - 1]) > 1e-12 * h_values[i - 1])
        fail("h_values must halve at every step");
    }
    for (double h : h_values) {
      const double n = half_width / h;
      if (std::abs(n - std::round(n)) > 1e-9 * n) fail("half_width must be a multiple of every h");
    }
  }
  if (needs_regularity_gap(kind) && !(s >= 0.0 && s < delta - 0.5 * params.d))
    fail("need 0 <= s < delta - d/2");
  if (kind == ExperimentKind::growth) {
    if (growth_orders.empty()) fail("growth.orders is empty");
    for (int m : growth_orders)
      if (m < 1) fail("growth orders must be >= 1");
    if (!(T > 0.0)) fail("growth needs T > 0");
    if (samples < 4) fail("growth needs samples >= 4");
    const double n = half_width / growth_h;
    if (!(growth_h > 0.0) || std::abs(n - std::round(n)) > 1e-9 * n) fail("growth.h must divide half_width");
  }
  if (kind == ExperimentKind::simulate && simulate_tau && !(*simulate_tau > 0.0)) fail("simulate.tau must be positive");
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["kind"] = to_string(c.kind);
  j["seed"] = c.seed;
  j["T"] = c.T;
  j["tau_factor"] = c.tau_factor;
  j["samples"] = c.samples;
  j["refinement"] = c.refinement;
  if (c.max_terminal_error) j["max_terminal_error"] = *c.max_terminal_error;
  j["model"] = {{"p", c.params.p}, {"lambda", c.params.lambda}, {"d", c.params.d}};
  j["data"] = {{"profile", to_string(c.profile)}, {"delta", c.delta}, {"s", c.s}};
  if (c.profile == Profile::gaussian) {
    j["data"]["amplitude"] = c.amplitude;
    j["data"]["width"] = c.width;
  }
  if (c.profile == Profile::soliton) j["data"]["x0"] = c.x0;
  j["sweep"] = {{"h_values", c.h_values}, {"half_width", c.half_width}};
  if (c.kind == ExperimentKind::growth) j["growth"] = {{"h", c.growth_h}, {"orders", c.growth_orders}};
  if (c.kind == ExperimentKind::simulate) {
    j["simulate"] = {{"input", c.simulate_input}, {"h", c.simulate_h}};
    if (c.simulate_tau) j["simulate"]["tau"] = *c.simulate_tau;
  }
  return j;
}

}  // namespace dnls
