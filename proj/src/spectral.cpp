#include "dnls/spectral.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "dnls/fft.hpp"

namespace dnls {

namespace {

// Native FFT position q <-> signed mode k.
int signed_mode(int q, int n) { return q < n / 2 ? q : q - n; }

// Centered storage position for a native FFT position.
int centered_position(int q, int n) { return (q + n / 2) % n; }

double sine_symbol(const LatticeGrid& g, const int* k) {
  const double h = g.spacing();
  double acc = 0.0;
  for (int j = 0; j < g.dim(); ++j) {
    const double s = std::sin(0.5 * h * g.frequency(k[j]));
    acc += s * s;
  }
  return 4.0 / (h * h) * acc;
}

double continuum_symbol(const LatticeGrid& g, const int* k) {
  double acc = 0.0;
  for (int j = 0; j < g.dim(); ++j) {
    const double xi = g.frequency(k[j]);
    acc += xi * xi;
  }
  return acc;
}

// Applies a multiplier m(sigma_h) to the spectrum of u and transforms back.
template <typename F>
GridFunction apply_lattice_multiplier(const GridFunction& u, F&& multiplier) {
  const auto& g = u.grid();
  const int n = g.points_per_axis();
  std::vector<Complex> buf(u.values().begin(), u.values().end());
  fft_inplace(buf, g.dim(), n, FftDirection::forward);
  const double inv = 1.0 / static_cast<double>(g.size());
  int q[2];
  int k[2];
  for (std::size_t i = 0; i < buf.size(); ++i) {
    g.unflatten(i, q);
    for (int j = 0; j < g.dim(); ++j) k[j] = signed_mode(q[j], n);
    buf[i] *= multiplier(sine_symbol(g, k)) * inv;
  }
  fft_inplace(buf, g.dim(), n, FftDirection::backward);
  return GridFunction(g, std::move(buf));
}

}  // namespace

SpectrumFunction::SpectrumFunction(LatticeGrid grid) : grid_(grid), coeffs_(grid.size()) {}

SpectrumFunction::SpectrumFunction(LatticeGrid grid, std::vector<Complex> coeffs)
    : grid_(grid), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != grid_.size())
    throw ArgumentError("SpectrumFunction: coefficient count does not match N^d");
}

void SpectrumFunction::modes(std::size_t flat, int* k) const {
  grid_.unflatten(flat, k);
  const int half = grid_.points_per_axis() / 2;
  for (int j = 0; j < grid_.dim(); ++j) k[j] -= half;
}

std::size_t SpectrumFunction::index_of(const int* k) const {
  const int half = grid_.points_per_axis() / 2;
  int m[2];
  for (int j = 0; j < grid_.dim(); ++j) m[j] = k[j] + half;
  return grid_.flatten(m);
}

double SpectrumFunction::frequency_norm2(std::size_t flat) const {
  int k[2];
  modes(flat, k);
  return continuum_symbol(grid_, k);
}

double SpectrumFunction::quadrature_weight() const {
  const double box = grid_.points_per_axis() * grid_.spacing();
  return grid_.dim() == 1 ? 1.0 / box : 1.0 / (box * box);
}

SpectrumFunction dft(const GridFunction& u) {
  const auto& g = u.grid();
  const int n = g.points_per_axis();
  std::vector<Complex> buf(u.values().begin(), u.values().end());
  fft_inplace(buf, g.dim(), n, FftDirection::forward);
  SpectrumFunction out(g);
  const double vol = g.cell_volume();
  int q[2];
  int m[2];
  for (std::size_t i = 0; i < buf.size(); ++i) {
    g.unflatten(i, q);
    // exp(i L xi_k) = (-1)^k since L xi_k = pi k.
    int parity = 0;
    for (int j = 0; j < g.dim(); ++j) {
      parity += q[j];
      m[j] = centered_position(q[j], n);
    }
    const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
    out[g.flatten(m)] = sign * vol * buf[i];
  }
  return out;
}

GridFunction idft(const SpectrumFunction& v) {
  const auto& g = v.grid();
  const int n = g.points_per_axis();
  std::vector<Complex> buf(g.size());
  const double scale = v.quadrature_weight();
  int q[2];
  int m[2];
  for (std::size_t i = 0; i < buf.size(); ++i) {
    g.unflatten(i, q);
    int parity = 0;
    for (int j = 0; j < g.dim(); ++j) {
      parity += q[j];
      m[j] = centered_position(q[j], n);
    }
    const double sign = (parity % 2 == 0) ? 1.0 : -1.0;
    buf[i] = sign * scale * v[g.flatten(m)];
  }
  fft_inplace(buf, g.dim(), n, FftDirection::backward);
  return GridFunction(g, std::move(buf));
}

double spectral_l2_norm2(const SpectrumFunction& v) {
  double acc = 0.0;
  for (auto c : v.coeffs()) acc += std::norm(c);
  return v.quadrature_weight() * acc;
}

SpectrumFunction sine_multiplier(const LatticeGrid& grid) {
  SpectrumFunction out(grid);
  int k[2];
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.modes(i, k);
    out[i] = sine_symbol(grid, k);
  }
  return out;
}

double sobolev_norm(const GridFunction& u, SobolevIndex s) {
  const auto spec = dft(u);
  const auto& g = u.grid();
  int k[2];
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.modes(i, k);
    acc += std::pow(1.0 + sine_symbol(g, k), s.s) * std::norm(spec[i]);
  }
  return std::sqrt(spec.quadrature_weight() * acc);
}

double homogeneous_sobolev_norm(const GridFunction& u, SobolevIndex s) {
  if (!(s.s > 0.0)) throw ArgumentError("homogeneous_sobolev_norm: s must be positive");
  const auto spec = dft(u);
  const auto& g = u.grid();
  int k[2];
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.modes(i, k);
    const double sigma = sine_symbol(g, k);
    if (sigma > 0.0) acc += std::pow(sigma, s.s) * std::norm(spec[i]);
  }
  return std::sqrt(spec.quadrature_weight() * acc);
}

GridFunction linear_flow(const GridFunction& u, double t) {
  return apply_lattice_multiplier(u, [t](double sigma) { return std::polar(1.0, -t * sigma); });
}

GridFunction fractional_sobolev_apply(const GridFunction& u, SobolevIndex s) {
  const double e = 0.5 * s.s;
  return apply_lattice_multiplier(u, [e](double sigma) { return Complex(std::pow(1.0 + sigma, e)); });
}

void write_csv(std::ostream& os, const SpectrumFunction& v) {
  const auto& g = v.grid();
  for (int j = 1; j <= g.dim(); ++j) os << (j == 1 ? "" : ",") << "k_" << j;
  for (int j = 1; j <= g.dim(); ++j) os << ",xi_" << j;
  os << ",re,im\n" << std::setprecision(17);
  int k[2];
  for (std::size_t i = 0; i < v.size(); ++i) {
    v.modes(i, k);
    for (int j = 0; j < g.dim(); ++j) os << (j == 0 ? "" : ",") << k[j];
    for (int j = 0; j < g.dim(); ++j) os << ',' << g.frequency(k[j]);
    os << ',' << v[i].real() << ',' << v[i].imag() << '\n';
  }
}

SpectralPropagator::SpectralPropagator(const LatticeGrid& grid, double t, Dispersion dispersion)
    : grid_(grid), t_(t), phase_(grid.size()) {
  const int n = grid.points_per_axis();
  const double inv = 1.0 / static_cast<double>(grid.size());
  int q[2];
  int k[2];
  for (std::size_t i = 0; i < phase_.size(); ++i) {
    grid.unflatten(i, q);
    for (int j = 0; j < grid.dim(); ++j) k[j] = signed_mode(q[j], n);
    const double symbol =
        dispersion == Dispersion::lattice ? sine_symbol(grid, k) : continuum_symbol(grid, k);
    phase_[i] = std::polar(inv, -t * symbol);
  }
}

void SpectralPropagator::apply(std::span<Complex> values) const {
  fft_inplace(values, grid_.dim(), grid_.points_per_axis(), FftDirection::forward);
  for (std::size_t i = 0; i < phase_.size(); ++i) values[i] *= phase_[i];
  fft_inplace(values, grid_.dim(), grid_.points_per_axis(), FftDirection::backward);
}

}  // namespace dnls
