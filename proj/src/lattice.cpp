#include "dnls/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

namespace dnls {

LatticeGrid::LatticeGrid(int dim, double spacing, int points_per_axis)
    : dim_(dim), h_(spacing), n_(points_per_axis), size_(0) {
  if (dim != 1 && dim != 2) throw ArgumentError("LatticeGrid: dimension must be 1 or 2");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw ArgumentError("LatticeGrid: spacing must be positive");
  if (points_per_axis < 4 || points_per_axis % 2 != 0)
    throw ArgumentError("LatticeGrid: points per axis must be even and >= 4");
  size_ = static_cast<std::size_t>(n_);
  if (dim_ == 2) size_ *= static_cast<std::size_t>(n_);
}

LatticeGrid LatticeGrid::from_half_width(int dim, double spacing, double half_width) {
  const double ratio = 2.0 * half_width / spacing;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio))
    throw ArgumentError("LatticeGrid: 2L/h is not an integer");
  return LatticeGrid(dim, spacing, static_cast<int>(rounded));
}

double LatticeGrid::cell_volume() const { return dim_ == 1 ? h_ : h_ * h_; }

double LatticeGrid::frequency(int k) const {
  return 2.0 * std::numbers::pi * k / (n_ * h_);
}

void LatticeGrid::unflatten(std::size_t flat, int* idx) const {
  if (dim_ == 1) {
    idx[0] = static_cast<int>(flat);
  } else {
    idx[0] = static_cast<int>(flat / n_);
    idx[1] = static_cast<int>(flat % n_);
  }
}

std::size_t LatticeGrid::flatten(const int* idx) const {
  if (dim_ == 1) return static_cast<std::size_t>(idx[0]);
  return static_cast<std::size_t>(idx[0]) * n_ + static_cast<std::size_t>(idx[1]);
}

std::size_t LatticeGrid::shifted(std::size_t flat, int axis, int shift) const {
  int idx[2];
  unflatten(flat, idx);
  idx[axis] = ((idx[axis] + shift) % n_ + n_) % n_;
  return flatten(idx);
}

GridFunction::GridFunction(LatticeGrid grid) : grid_(grid), values_(grid.size()) {}

GridFunction::GridFunction(LatticeGrid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size())
    throw ArgumentError("GridFunction: value count does not match N^d");
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
  });
}

GridFunction& GridFunction::operator+=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_, "GridFunction::operator+=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
  require_same_grid(grid_, other.grid_, "GridFunction::operator-=");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= other.values_[i];
  return *this;
}

GridFunction& GridFunction::operator*=(Complex scale) {
  for (auto& v : values_) v *= scale;
  return *this;
}

GridFunction GridFunction::conj() const {
  GridFunction out(*this);
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

void require_same_grid(const LatticeGrid& a, const LatticeGrid& b, const char* what) {
  if (!(a == b)) throw ArgumentError(std::string(what) + ": grid mismatch");
}

namespace {

void check_axis(const GridFunction& u, int axis) {
  if (axis < 1 || axis > u.grid().dim())
    throw ArgumentError("difference operator: axis out of range");
}

}  // namespace

GridFunction forward_difference(const GridFunction& u, int axis) {
  check_axis(u, axis);
  const auto& g = u.grid();
  const double inv_h = 1.0 / g.spacing();
  GridFunction out(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = (u[g.shifted(i, axis - 1, +1)] - u[i]) * inv_h;
  return out;
}

GridFunction backward_difference(const GridFunction& u, int axis) {
  check_axis(u, axis);
  const auto& g = u.grid();
  const double inv_h = 1.0 / g.spacing();
  GridFunction out(g);
  for (std::size_t i = 0; i < g.size(); ++i)
    out[i] = (u[i] - u[g.shifted(i, axis - 1, -1)]) * inv_h;
  return out;
}

GridFunction apply_laplacian(const GridFunction& u) {
  const auto& g = u.grid();
  const double inv_h2 = 1.0 / (g.spacing() * g.spacing());
  const int n = g.points_per_axis();
  GridFunction out(g);
  if (g.dim() == 1) {
    for (int i = 0; i < n; ++i) {
      const int ip = i + 1 == n ? 0 : i + 1;
      const int im = i == 0 ? n - 1 : i - 1;
      out[i] = (u[ip] + u[im] - 2.0 * u[i]) * inv_h2;
    }
    return out;
  }
  for (int i = 0; i < n; ++i) {
    const int ip = i + 1 == n ? 0 : i + 1;
    const int im = i == 0 ? n - 1 : i - 1;
    for (int j = 0; j < n; ++j) {
      const int jp = j + 1 == n ? 0 : j + 1;
      const int jm = j == 0 ? n - 1 : j - 1;
      const std::size_t c = static_cast<std::size_t>(i) * n + j;
      const Complex uc = u[c];
      const Complex ax = u[static_cast<std::size_t>(ip) * n + j] +
                         u[static_cast<std::size_t>(im) * n + j] - 2.0 * uc;
      const Complex ay = u[static_cast<std::size_t>(i) * n + jp] +
                         u[static_cast<std::size_t>(i) * n + jm] - 2.0 * uc;
      out[c] = (ax + ay) * inv_h2;
    }
  }
  return out;
}

double lp_norm(const GridFunction& u, double p) {
  if (std::isinf(p) && p > 0) {
    double m = 0.0;
    for (auto v : u.values()) m = std::max(m, std::abs(v));
    return m;
  }
  if (!(p >= 1.0)) throw ArgumentError("lp_norm: p must be >= 1");
  // Scale by the sup norm so large p does not overflow.
  double m = 0.0;
  for (auto v : u.values()) m = std::max(m, std::abs(v));
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  if (p == 2.0) {
    for (auto v : u.values()) acc += std::norm(v / m);
  } else {
    for (auto v : u.values()) acc += std::pow(std::abs(v) / m, p);
  }
  return m * std::pow(u.grid().cell_volume() * acc, 1.0 / p);
}

Complex inner_product(const GridFunction& f, const GridFunction& g) {
  require_same_grid(f.grid(), g.grid(), "inner_product");
  Complex acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) acc += f[i] * std::conj(g[i]);
  return f.grid().cell_volume() * acc;
}

namespace {

// Re <(-Delta)^k u, u> for k = 0..m.
std::vector<double> homogeneous_terms(const GridFunction& u, int m) {
  if (m < 0) throw ArgumentError("Sobolev order must be nonnegative");
  std::vector<double> terms;
  terms.reserve(m + 1);
  GridFunction v = u;
  for (int k = 0; k <= m; ++k) {
    if (k > 0) {
      v = apply_laplacian(v);
      v *= -1.0;
    }
    terms.push_back(std::max(0.0, inner_product(v, u).real()));
  }
  return terms;
}

}  // namespace

double sobolev_norm_operator(const GridFunction& u, int m) {
  const auto terms = homogeneous_terms(u, m);
  double acc = 0.0;
  double binom = 1.0;
  for (int k = 0; k <= m; ++k) {
    acc += binom * terms[k];
    binom = binom * (m - k) / (k + 1);
  }
  return std::sqrt(acc);
}

double sobolev_norm_sum(const GridFunction& u, int m) {
  double acc = 0.0;
  for (double t : homogeneous_terms(u, m)) acc += t;
  return std::sqrt(acc);
}

double homogeneous_sobolev_norm_operator(const GridFunction& u, int m) {
  return std::sqrt(homogeneous_terms(u, m).back());
}

double homogeneous_norm_bound(const LatticeGrid& grid, int m) {
  return std::pow(4.0 * grid.dim() / (grid.spacing() * grid.spacing()), 0.5 * m);
}

double boundary_mass_fraction(const GridFunction& u) {
  const auto& g = u.grid();
  const double cutoff = 0.9 * g.half_width();
  double total = 0.0;
  double shell = 0.0;
  int idx[2];
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    double r = 0.0;
    for (int j = 0; j < g.dim(); ++j) r = std::max(r, std::abs(g.coordinate(idx[j])));
    const double w = std::norm(u[i]);
    total += w;
    if (r >= cutoff) shell += w;
  }
  return total > 0.0 ? shell / total : 0.0;
}

// Serialization -------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'D', 'N', 'L', 'S', 'G', 'R', 'I', 'D'};

void put_f64(std::ostream& os, double x) {
  auto bits = std::bit_cast<std::uint64_t>(x);
  unsigned char bytes[8];
  for (int b = 0; b < 8; ++b) bytes[b] = static_cast<unsigned char>((bits >> (8 * b)) & 0xffu);
  os.write(reinterpret_cast<const char*>(bytes), 8);
}

double get_f64(std::istream& is) {
  unsigned char bytes[8];
  if (!is.read(reinterpret_cast<char*>(bytes), 8))
    throw std::runtime_error("read_binary: truncated stream");
  std::uint64_t bits = 0;
  for (int b = 7; b >= 0; --b) bits = (bits << 8) | bytes[b];
  return std::bit_cast<double>(bits);
}

}  // namespace

void write_binary(std::ostream& os, const GridFunction& u) {
  const auto& g = u.grid();
  os.write(kMagic, sizeof(kMagic));
  put_f64(os, g.dim());
  put_f64(os, g.points_per_axis());
  put_f64(os, g.spacing());
  for (auto v : u.values()) {
    put_f64(os, v.real());
    put_f64(os, v.imag());
  }
}

GridFunction read_binary(std::istream& is) {
  char magic[8];
  if (!is.read(magic, 8) || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("read_binary: bad magic");
  const double d = get_f64(is);
  const double n = get_f64(is);
  const double h = get_f64(is);
  LatticeGrid grid(static_cast<int>(d), h, static_cast<int>(n));
  std::vector<Complex> values(grid.size());
  for (auto& v : values) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    v = {re, im};
  }
  return GridFunction(grid, std::move(values));
}

void save_binary(const std::string& path, const GridFunction& u) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  write_binary(os, u);
}

GridFunction load_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_binary(is);
}

void write_csv(std::ostream& os, const GridFunction& u) {
  const auto& g = u.grid();
  os << "index";
  for (int j = 1; j <= g.dim(); ++j) os << ",a_" << j;
  os << ",re,im\n";
  os << std::setprecision(17);
  int idx[2];
  for (std::size_t i = 0; i < g.size(); ++i) {
    g.unflatten(i, idx);
    os << i;
    for (int j = 0; j < g.dim(); ++j) os << ',' << g.coordinate(idx[j]);
    os << ',' << u[i].real() << ',' << u[i].imag() << '\n';
  }
}

}  // namespace dnls
