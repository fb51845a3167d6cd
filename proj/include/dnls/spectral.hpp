#pragma once

#include <cmath>
#include <iosfwd>
#include <span>
#include <vector>

#include "dnls/lattice.hpp"

namespace dnls {

/// Regularity exponent of a Sobolev scale; any finite real.
struct SobolevIndex {
  explicit SobolevIndex(double value) : s(value) {
    if (!std::isfinite(value)) throw ArgumentError("SobolevIndex must be finite");
  }
  double s;
};

/// Coefficients on the dual grid xi_k = 2 pi k / (N h), k in [-N/2, N/2)
/// per axis, stored in increasing-k row-major order.
class SpectrumFunction {
 public:
  explicit SpectrumFunction(LatticeGrid grid);
  SpectrumFunction(LatticeGrid grid, std::vector<Complex> coeffs);

  const LatticeGrid& grid() const { return grid_; }
  std::span<const Complex> coeffs() const { return coeffs_; }
  std::span<Complex> coeffs() { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  Complex operator[](std::size_t i) const { return coeffs_[i]; }
  Complex& operator[](std::size_t i) { return coeffs_[i]; }

  /// Signed mode numbers of a flat index.
  void modes(std::size_t flat, int* k) const;
  /// Flat index of signed mode numbers (each in [-N/2, N/2)).
  std::size_t index_of(const int* k) const;
  /// |xi|^2 at a flat index.
  double frequency_norm2(std::size_t flat) const;

  /// Dual quadrature weight (2 pi / (N h))^d / (2 pi)^d = (N h)^-d.
  double quadrature_weight() const;

 private:
  LatticeGrid grid_;
  std::vector<Complex> coeffs_;
};

/// coeffs[k] = h^d sum_a u(a) exp(-i a . xi_k), with a measured from -L.
SpectrumFunction dft(const GridFunction& u);
/// Exact inverse of dft (finite dual sum).
GridFunction idft(const SpectrumFunction& v);

/// (2 pi)^-d times the dual-grid quadrature of |v|^2; equals ||u||_{L^2}^2 for v = dft(u).
double spectral_l2_norm2(const SpectrumFunction& v);

/// sigma_h(xi) = (4/h^2) sum_j sin^2(h xi_j / 2), the symbol of -Delta_h.
SpectrumFunction sine_multiplier(const LatticeGrid& grid);

/// H^s norm through the multiplier (1 + sigma_h)^s.
double sobolev_norm(const GridFunction& u, SobolevIndex s);
/// Homogeneous norm through sigma_h^s (s > 0).
double homogeneous_sobolev_norm(const GridFunction& u, SobolevIndex s);

/// exp(i t Delta_h) u, diagonal in Fourier.
GridFunction linear_flow(const GridFunction& u, double t);

/// (1 - Delta_h)^{s/2} u.
GridFunction fractional_sobolev_apply(const GridFunction& u, SobolevIndex s);

/// CSV with header "k_1[,k_2],xi_1[,xi_2],re,im".
void write_csv(std::ostream& os, const SpectrumFunction& v);

/// Dispersion relation used by a propagator: the lattice symbol sigma_h
/// or the continuum symbol |xi|^2.
enum class Dispersion { lattice, continuum };

/// Precomputed exp(-i t symbol) acting in place on grid values. Works in
/// native FFT order so that no reordering is needed per application.
class SpectralPropagator {
 public:
  SpectralPropagator(const LatticeGrid& grid, double t, Dispersion dispersion);
  void apply(std::span<Complex> values) const;
  const LatticeGrid& grid() const { return grid_; }
  double time() const { return t_; }

 private:
  LatticeGrid grid_;
  double t_;
  std::vector<Complex> phase_;
};

}  // namespace dnls
