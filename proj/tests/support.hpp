#pragma once

#include <cmath>
#include <random>

#include "dnls/lattice.hpp"

namespace dnls::testing {

inline GridFunction random_field(const LatticeGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  GridFunction u(grid);
  for (auto& v : u.values()) v = {normal(rng), normal(rng)};
  return u;
}

inline GridFunction delta_at_origin(const LatticeGrid& grid) {
  GridFunction u(grid);
  int idx[2] = {grid.points_per_axis() / 2, grid.points_per_axis() / 2};
  u[grid.flatten(idx)] = 1.0;
  return u;
}

inline GridFunction plane_wave(const LatticeGrid& grid, const int* k) {
  return GridFunction::from_function(grid, [&](std::span<const double> a) {
    double phase = 0.0;
    for (int j = 0; j < grid.dim(); ++j) phase += a[j] * grid.frequency(k[j]);
    return std::polar(1.0, phase);
  });
}

inline GridFunction gaussian(const LatticeGrid& grid, double amplitude, double width) {
  return GridFunction::from_function(grid, [&](std::span<const double> a) {
    double r2 = 0.0;
    for (double x : a) r2 += x * x;
    return Complex(amplitude * std::exp(-r2 / (width * width)), 0.0);
  });
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline double max_abs_diff(const GridFunction& a, const GridFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace dnls::testing
