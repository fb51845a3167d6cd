#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dnls/dynamics.hpp"

namespace dnls {

/// Config file violates the schema or the experiment's hypotheses.
class ConfigError : public ArgumentError {
 public:
  using ArgumentError::ArgumentError;
};

enum class ExperimentKind { converge, linear_flow, interp_test, aliasing, growth, functional_check, simulate };

std::string to_string(ExperimentKind kind);
/// Accepts the CLI spelling ("linear-flow", ...).
ExperimentKind parse_kind(const std::string& name);

enum class Profile { decay, soliton, gaussian };

std::string to_string(Profile profile);

/// Parsed INI experiment description. Sections and keys:
///
///   [experiment] kind, seed, T, tau_factor, samples, refinement, max_terminal_error
///   [model]      p, lambda, d
///   [data]       profile (decay | soliton | gaussian), delta, s, amplitude, width, x0
///   [sweep]      h_values (comma separated, halving), half_width
///   [growth]     h, orders (comma separated)
///   [simulate]   input, tau, h
///   [output]     dir, format (csv | json)
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::converge;
  std::uint64_t seed = 1;
  double T = 1.0;
  double tau_factor = 0.1;  ///< tau = tau_factor h^2
  int samples = 16;
  int refinement = 3;       ///< fine grid spacing h_min / 2^refinement
  std::optional<double> max_terminal_error;

  ModelParams params{3, 1.0, 1};

  Profile profile = Profile::decay;
  double delta = 2.0;
  double s = 0.0;
  double amplitude = 1.0;
  double width = 1.0;
  double x0 = 0.0;

  std::vector<double> h_values;
  double half_width = 25.6;

  double growth_h = 0.2;
  std::vector<int> growth_orders{1, 2};

  std::string simulate_input;
  std::optional<double> simulate_tau;
  double simulate_h = 0.2;

  std::string output_dir = "out";
  std::string format = "csv";

  /// Checks the schema invariants for the configured kind; throws ConfigError.
  void validate() const;
  double tau_for(double h) const { return tau_factor * h * h; }
};

ExperimentConfig parse_config(std::istream& is);
ExperimentConfig load_config(const std::string& path);

/// Echo used in reports. Output location and parallelism are left out so
/// reports do not depend on where or how they were produced.
nlohmann::json to_json(const ExperimentConfig& config);

}  // namespace dnls
