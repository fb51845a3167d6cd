#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>

#include "dnls/config.hpp"
#include "dnls/report.hpp"

namespace dnls {

struct RunOptions {
  int jobs = 1;
  std::filesystem::path out_dir = "out";  ///< simulate writes its state file here
};

/// Runs fn(i) for i in [0, n) on up to `jobs` threads. If several calls
/// throw, the one with the lowest index is rethrown.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

/// Grid with spacing h_min / 2^r shared by every sweep point.
LatticeGrid fine_grid_for(const ExperimentConfig& config, int r);

/// Initial datum psi_0 sampled on `fine`.
ContinuumField initial_datum(const ExperimentConfig& config, const LatticeGrid& fine);

/// Rate floor (delta - s)/2 - d/4 capped at 2, the order of the lattice
/// symbol error h^2 |xi|^4.
double flow_rate_exponent(const ExperimentConfig& config);

ExperimentReport run_convergence(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport run_linear_flow(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport run_interp_test(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport run_aliasing(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport run_growth(const ExperimentConfig& config, const RunOptions& options = {});
ExperimentReport run_functional_check(const ExperimentConfig& config, const RunOptions& options = {});
/// Integrates the state file (or the configured datum) to T and writes
/// <out_dir>/state.bin. With T = 0 the input file is copied byte for byte.
ExperimentReport run_simulate(const ExperimentConfig& config, const RunOptions& options = {});

ExperimentReport run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

}  // namespace dnls
