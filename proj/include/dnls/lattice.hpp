#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace dnls {

using Complex = std::complex<double>;

/// Raised for violated preconditions on arguments (axis out of range,
/// mismatched grids, invalid exponents, ...).
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Truncated periodic lattice hZ^d restricted to the box [-L, L)^d,
/// with N points per axis and L = N h / 2.
class LatticeGrid {
 public:
  LatticeGrid(int dim, double spacing, int points_per_axis);

  /// Grid with the given spacing covering [-half_width, half_width)^d.
  /// half_width / spacing must be an integer (to 1e-9 relative).
  static LatticeGrid from_half_width(int dim, double spacing, double half_width);

  int dim() const { return dim_; }
  double spacing() const { return h_; }
  int points_per_axis() const { return n_; }
  double half_width() const { return 0.5 * n_ * h_; }
  std::size_t size() const { return size_; }
  /// Cell volume h^d used as quadrature weight.
  double cell_volume() const;

  /// Coordinate of index i along any axis: -L + i h.
  double coordinate(int i) const { return -half_width() + i * h_; }

  /// Dual frequency for signed mode number k in [-N/2, N/2): 2 pi k / (N h).
  double frequency(int k) const;

  /// Flat row-major index -> per-axis index (axis 0 slowest).
  void unflatten(std::size_t flat, int* idx) const;
  std::size_t flatten(const int* idx) const;

  /// Flat index of the neighbour shifted by `shift` along `axis` (periodic).
  std::size_t shifted(std::size_t flat, int axis, int shift) const;

  /// Same spacing, dimension and point count (exact comparison).
  bool operator==(const LatticeGrid& other) const = default;

 private:
  int dim_;
  double h_;
  int n_;
  std::size_t size_;
};

/// Complex-valued function on a LatticeGrid.
class GridFunction {
 public:
  explicit GridFunction(LatticeGrid grid);
  GridFunction(LatticeGrid grid, std::vector<Complex> values);

  template <typename F>
  static GridFunction from_function(const LatticeGrid& grid, F&& f);

  const LatticeGrid& grid() const { return grid_; }
  std::span<const Complex> values() const { return values_; }
  std::span<Complex> values() { return values_; }
  std::size_t size() const { return values_.size(); }

  Complex operator[](std::size_t i) const { return values_[i]; }
  Complex& operator[](std::size_t i) { return values_[i]; }

  bool all_finite() const;

  GridFunction& operator+=(const GridFunction& other);
  GridFunction& operator-=(const GridFunction& other);
  GridFunction& operator*=(Complex scale);

  friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
  friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
  friend GridFunction operator*(Complex s, GridFunction a) { return a *= s; }

  GridFunction conj() const;

 private:
  LatticeGrid grid_;
  std::vector<Complex> values_;
};

template <typename F>
GridFunction GridFunction::from_function(const LatticeGrid& grid, F&& f) {
  GridFunction out(grid);
  int idx[2] = {0, 0};
  double a[2] = {0.0, 0.0};
  for (std::size_t flat = 0; flat < grid.size(); ++flat) {
    grid.unflatten(flat, idx);
    for (int j = 0; j < grid.dim(); ++j) a[j] = grid.coordinate(idx[j]);
    out[flat] = f(std::span<const double>(a, grid.dim()));
  }
  return out;
}

void require_same_grid(const LatticeGrid& a, const LatticeGrid& b, const char* what);

// Difference operators. `axis` is 1-based (1 <= axis <= d).
GridFunction forward_difference(const GridFunction& u, int axis);
GridFunction backward_difference(const GridFunction& u, int axis);

/// Periodic (2d+1)-point discrete Laplacian.
GridFunction apply_laplacian(const GridFunction& u);

/// (h^d sum |u|^p)^(1/p); p = infinity gives the sup norm.
double lp_norm(const GridFunction& u, double p);

/// <f, g>_h = h^d sum f conj(g)
Complex inner_product(const GridFunction& f, const GridFunction& g);

/// Inhomogeneous H^m norm <(1 - Delta_h)^m u, u>_h^(1/2), i.e. the sum of the
/// homogeneous parts with binomial weights. Equals the multiplier norm with
/// (1 + sigma_h)^m.
double sobolev_norm_operator(const GridFunction& u, int m);

/// Unweighted sum (sum_{k<=m} ||u||_{Hdot^k}^2)^(1/2); equivalent to the above
/// within a factor max_k binom(m, k)^(1/2).
double sobolev_norm_sum(const GridFunction& u, int m);

/// Homogeneous Hdot^m norm, <(-Delta_h)^m u, u>_h^(1/2).
double homogeneous_sobolev_norm_operator(const GridFunction& u, int m);

/// Norm-equivalence constant (4d/h^2)^(m/2) with ||u||_{Hdot^m} <= C ||u||_{L^2}.
double homogeneous_norm_bound(const LatticeGrid& grid, int m);

/// Fraction of the L^2 mass carried by the outer 10% shell of the box.
double boundary_mass_fraction(const GridFunction& u);

/// Threshold above which a run is flagged for box-truncation effects.
inline constexpr double kBoundaryMassThreshold = 1e-10;

// Serialization -------------------------------------------------------------

/// Binary layout: "DNLSGRID", then d, N, h as little-endian f64, then
/// interleaved (re, im) f64 values in row-major order.
void write_binary(std::ostream& os, const GridFunction& u);
GridFunction read_binary(std::istream& is);
void save_binary(const std::string& path, const GridFunction& u);
GridFunction load_binary(const std::string& path);

/// CSV with header "index,a_1[,a_2],re,im" and 17 significant digits.
void write_csv(std::ostream& os, const GridFunction& u);

}  // namespace dnls
