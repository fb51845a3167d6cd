#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "dnls/lattice.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

/// Field on a fine periodic surrogate of R^d: spacing h/2^r, same box as the
/// coarse lattice it was built from.
class ContinuumField {
 public:
  static constexpr double kUnbounded = std::numeric_limits<double>::infinity();

  ContinuumField(LatticeGrid fine_grid, std::vector<Complex> values,
                 double band_limit = kUnbounded);
  explicit ContinuumField(GridFunction values, double band_limit = kUnbounded);

  const LatticeGrid& grid() const { return samples_.grid(); }
  const GridFunction& samples() const { return samples_; }
  std::span<const Complex> values() const { return samples_.values(); }
  /// pi / h_c of the coarsest torus carrying the spectrum (kUnbounded if none).
  double band_limit() const { return band_limit_; }

 private:
  GridFunction samples_;
  double band_limit_;
};

/// Exponent r with fine spacing = coarse spacing / 2^r and equal half-widths.
/// Throws ArgumentError when the grids are not commensurate.
int refinement_between(const LatticeGrid& coarse, const LatticeGrid& fine);

/// Grid with spacing h / 2^r over the same box.
LatticeGrid refine(const LatticeGrid& coarse, int r);

/// Copies coarse coefficients onto the fine dual grid at equal frequencies.
/// The coarse Nyquist mode stays at -pi/h (half-open torus).
SpectrumFunction zero_pad(const SpectrumFunction& coarse, const LatticeGrid& fine);

/// S_h u sampled on the grid refined r times.
ContinuumField shannon_interpolate(const GridFunction& u, int r);

/// Pi_h f: stride sampling at the coarse lattice points.
GridFunction pointwise_project(const ContinuumField& f, const LatticeGrid& coarse);

/// (2 pi)^-d sum over the fine dual grid of (1 + |xi|^2)^s |F f|^2, square-rooted.
double continuum_sobolev_norm(const ContinuumField& f, double s);

/// Same weight, applied to coefficients already on a dual grid.
double continuum_sobolev_norm(const SpectrumFunction& spectrum, double s);

/// exp(i t Delta) f with the continuum symbol |xi|^2.
ContinuumField continuum_flow(const ContinuumField& f, double t);

/// Restriction of the spectrum of f to the coarse torus [-pi/h, pi/h)^d.
ContinuumField band_project(const ContinuumField& f, const LatticeGrid& coarse);

/// Folds fine-grid coefficients onto the coarse dual grid:
/// out(xi) = sum_m F f(xi + 2 pi m / h) over the images present on the fine grid.
SpectrumFunction poisson_fold(const SpectrumFunction& fine, const LatticeGrid& coarse);

/// || S_h(f g) - (S_h f)(S_h g) ||_{H^s}, products formed on the grid refined r times.
double aliasing_defect(const GridFunction& f, const GridFunction& g, double s, int r);

/// || S_h(u^n1 conj(u)^n2) - (S_h u)^n1 conj(S_h u)^n2 ||_{H^s}, with r large
/// enough that 2^r >= n1 + n2 keeps the fine-grid product alias free.
double power_aliasing_defect(const GridFunction& u, int n1, int n2, double s);

/// || S_h(g^n1 conj(g)^n2) ||_{H^delta} / || S_h g ||_{H^delta}^(n1+n2).
double power_subordination_ratio(const GridFunction& g, int n1, int n2, double delta);

struct RoundtripResidual {
  double aliasing;  ///< in-torus part (folded images)
  double tail;      ///< out-of-torus part (-F f outside T_h)
  double total;     ///< norm of the full difference; sqrt(aliasing^2 + tail^2)
};

/// || S_h Pi_h f - f ||_{H^s} split by frequency support.
RoundtripResidual roundtrip_residual(const ContinuumField& f, const LatticeGrid& coarse, double s);

struct ProjectionGap {
  double lhs;             ///< ||Pi_h f||_{H^s_h}
  double rhs_main;        ///< ||f||_{H^s}
  double rhs_correction;  ///< h^(delta - s) ||f||_{H^delta}
  double aliased_excess;  ///< ||Pi_h f - Pi_h(band_project f)||_{H^s_h}
};

ProjectionGap projection_norm_gap(const ContinuumField& f, const LatticeGrid& coarse, double s,
                                  double delta);

/// Sharp-regularity test data: spectrum (1 + |xi|^2)^(-beta/2) e^{i theta(xi)}
/// with beta = delta + d/2 + 1/2.
struct DecayProfile {
  DecayProfile(double delta, int dim, std::uint64_t seed);
  double delta;
  double beta;
  int dim;
  std::uint64_t seed;
};

/// Real field normalized to ||f||_{H^delta} = 1. The phase theta is odd and
/// smooth in xi (random shift plus a few random sines), so f is localized
/// near a random center within |x| < 1.
ContinuumField generate_decay_function(const DecayProfile& profile, const LatticeGrid& fine);

}  // namespace dnls
