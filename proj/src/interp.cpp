#include "dnls/interp.hpp"

#include <cmath>
#include <random>

namespace dnls {

ContinuumField::ContinuumField(LatticeGrid fine_grid, std::vector<Complex> values,
                               double band_limit)
    : samples_(fine_grid, std::move(values)), band_limit_(band_limit) {}

ContinuumField::ContinuumField(GridFunction values, double band_limit)
    : samples_(std::move(values)), band_limit_(band_limit) {}

int refinement_between(const LatticeGrid& coarse, const LatticeGrid& fine) {
  if (coarse.dim() != fine.dim()) throw ArgumentError("grids differ in dimension");
  const int nc = coarse.points_per_axis();
  const int nf = fine.points_per_axis();
  if (nf < nc || nf % nc != 0) throw ArgumentError("fine grid is not a refinement of coarse grid");
  const int ratio = nf / nc;
  if ((ratio & (ratio - 1)) != 0) throw ArgumentError("refinement ratio is not a power of two");
  const double hf = coarse.spacing() / ratio;
  if (std::abs(hf - fine.spacing()) > 1e-12 * hf)
    throw ArgumentError("grids do not cover the same box");
  int r = 0;
  while ((1 << r) < ratio) ++r;
  return r;
}

LatticeGrid refine(const LatticeGrid& coarse, int r) {
  if (r < 0 || r > 20) throw ArgumentError("refinement level out of range");
  const int ratio = 1 << r;
  return LatticeGrid(coarse.dim(), coarse.spacing() / ratio, coarse.points_per_axis() * ratio);
}

SpectrumFunction zero_pad(const SpectrumFunction& coarse, const LatticeGrid& fine) {
  refinement_between(coarse.grid(), fine);
  SpectrumFunction out(fine);
  int k[2];
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    coarse.modes(i, k);
    out[out.index_of(k)] = coarse[i];
  }
  return out;
}

ContinuumField shannon_interpolate(const GridFunction& u, int r) {
  if (r < 1) throw ArgumentError("shannon_interpolate: refinement level must be >= 1");
  const auto fine = refine(u.grid(), r);
  const double band = std::acos(-1.0) / u.grid().spacing();
  return ContinuumField(idft(zero_pad(dft(u), fine)), band);
}

GridFunction pointwise_project(const ContinuumField& f, const LatticeGrid& coarse) {
  const int r = refinement_between(coarse, f.grid());
  const int stride = 1 << r;
  const auto& fine = f.grid();
  GridFunction out(coarse);
  int idx[2];
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    coarse.unflatten(i, idx);
    for (int j = 0; j < coarse.dim(); ++j) idx[j] *= stride;
    out[i] = f.samples()[fine.flatten(idx)];
  }
  return out;
}

double continuum_sobolev_norm(const SpectrumFunction& spectrum, double s) {
  double acc = 0.0;
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const double a2 = std::norm(spectrum[i]);
    if (a2 == 0.0) continue;
    acc += std::pow(1.0 + spectrum.frequency_norm2(i), s) * a2;
  }
  return std::sqrt(spectrum.quadrature_weight() * acc);
}

double continuum_sobolev_norm(const ContinuumField& f, double s) {
  return continuum_sobolev_norm(dft(f.samples()), s);
}

ContinuumField continuum_flow(const ContinuumField& f, double t) {
  GridFunction out = f.samples();
  SpectralPropagator(f.grid(), t, Dispersion::continuum).apply(out.values());
  return ContinuumField(std::move(out), f.band_limit());
}

namespace {

bool inside_torus(const int* k, int dim, int n_coarse) {
  for (int j = 0; j < dim; ++j)
    if (k[j] < -n_coarse / 2 || k[j] >= n_coarse / 2) return false;
  return true;
}

ContinuumField product_field(const ContinuumField& a, const ContinuumField& b) {
  GridFunction out = a.samples();
  for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b.samples()[i];
  return ContinuumField(std::move(out));
}

// u^n1 conj(u)^n2 pointwise.
GridFunction monomial(const GridFunction& u, int n1, int n2) {
  GridFunction out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i) {
    Complex acc = 1.0;
    for (int m = 0; m < n1; ++m) acc *= u[i];
    for (int m = 0; m < n2; ++m) acc *= std::conj(u[i]);
    out[i] = acc;
  }
  return out;
}

}  // namespace

ContinuumField band_project(const ContinuumField& f, const LatticeGrid& coarse) {
  refinement_between(coarse, f.grid());
  auto spec = dft(f.samples());
  int k[2];
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.modes(i, k);
    if (!inside_torus(k, coarse.dim(), coarse.points_per_axis())) spec[i] = 0.0;
  }
  return ContinuumField(idft(spec), std::acos(-1.0) / coarse.spacing());
}

SpectrumFunction poisson_fold(const SpectrumFunction& fine, const LatticeGrid& coarse) {
  refinement_between(coarse, fine.grid());
  const int n = coarse.points_per_axis();
  SpectrumFunction out(coarse);
  int kf[2];
  int kc[2];
  for (std::size_t i = 0; i < fine.size(); ++i) {
    fine.modes(i, kf);
    for (int j = 0; j < coarse.dim(); ++j) kc[j] = ((kf[j] + n / 2) % n + n) % n - n / 2;
    out[out.index_of(kc)] += fine[i];
  }
  return out;
}

double aliasing_defect(const GridFunction& f, const GridFunction& g, double s, int r) {
  require_same_grid(f.grid(), g.grid(), "aliasing_defect");
  GridFunction fg = f;
  for (std::size_t i = 0; i < fg.size(); ++i) fg[i] *= g[i];
  const auto lhs = shannon_interpolate(fg, r);
  const auto rhs = product_field(shannon_interpolate(f, r), shannon_interpolate(g, r));
  return continuum_sobolev_norm(ContinuumField(lhs.samples() - rhs.samples()), s);
}

double power_aliasing_defect(const GridFunction& u, int n1, int n2, double s) {
  if (n1 < 0 || n2 < 0 || n1 + n2 < 1) throw ArgumentError("power_aliasing_defect: bad powers");
  int r = 1;
  while ((1 << r) < n1 + n2) ++r;
  const auto lhs = shannon_interpolate(monomial(u, n1, n2), r);
  const auto rhs = monomial(shannon_interpolate(u, r).samples(), n1, n2);
  return continuum_sobolev_norm(ContinuumField(lhs.samples() - rhs), s);
}

double power_subordination_ratio(const GridFunction& g, int n1, int n2, double delta) {
  if (n1 < 0 || n2 < 0 || n1 + n2 < 1)
    throw ArgumentError("power_subordination_ratio: need n1 + n2 >= 1");
  if (!(delta > 0.5 * g.grid().dim()))
    throw ArgumentError("power_subordination_ratio: delta must exceed d/2");
  const double base = continuum_sobolev_norm(shannon_interpolate(g, 1), delta);
  if (base == 0.0) throw ArgumentError("power_subordination_ratio: zero field");
  const double top = continuum_sobolev_norm(shannon_interpolate(monomial(g, n1, n2), 1), delta);
  return top / std::pow(base, n1 + n2);
}

RoundtripResidual roundtrip_residual(const ContinuumField& f, const LatticeGrid& coarse, double s) {
  if (refinement_between(coarse, f.grid()) < 1)
    throw ArgumentError("roundtrip_residual: field grid must be strictly finer");
  const auto exact = dft(f.samples());
  const auto rebuilt = zero_pad(dft(pointwise_project(f, coarse)), f.grid());
  const int n = coarse.points_per_axis();
  double in = 0.0;
  double out = 0.0;
  int k[2];
  for (std::size_t i = 0; i < exact.size(); ++i) {
    exact.modes(i, k);
    const double w = std::pow(1.0 + exact.frequency_norm2(i), s) * std::norm(rebuilt[i] - exact[i]);
    (inside_torus(k, coarse.dim(), n) ? in : out) += w;
  }
  const double q = exact.quadrature_weight();
  return {std::sqrt(q * in), std::sqrt(q * out), std::sqrt(q * (in + out))};
}

ProjectionGap projection_norm_gap(const ContinuumField& f, const LatticeGrid& coarse, double s,
                                  double delta) {
  if (!(delta - s > 0.5 * coarse.dim()))
    throw ArgumentError("projection_norm_gap: need delta - s > d/2");
  const auto sampled = pointwise_project(f, coarse);
  const auto banded = pointwise_project(band_project(f, coarse), coarse);
  const SobolevIndex idx(s);
  ProjectionGap gap{};
  gap.lhs = sobolev_norm(sampled, idx);
  gap.rhs_main = continuum_sobolev_norm(f, s);
  gap.rhs_correction = std::pow(coarse.spacing(), delta - s) * continuum_sobolev_norm(f, delta);
  gap.aliased_excess = sobolev_norm(sampled - banded, idx);
  return gap;
}

DecayProfile::DecayProfile(double delta_, int dim_, std::uint64_t seed_)
    : delta(delta_), beta(delta_ + 0.5 * dim_ + 0.5), dim(dim_), seed(seed_) {
  if (dim_ != 1 && dim_ != 2) throw ArgumentError("DecayProfile: dimension must be 1 or 2");
  if (!(delta_ > 0.5 * dim_) || !std::isfinite(delta_))
    throw ArgumentError("DecayProfile: delta must exceed d/2");
}

ContinuumField generate_decay_function(const DecayProfile& profile, const LatticeGrid& fine) {
  if (fine.dim() != profile.dim) throw ArgumentError("generate_decay_function: dimension mismatch");
  if (!(profile.beta > profile.delta + 0.5 * profile.dim))
    throw ArgumentError("generate_decay_function: beta must exceed delta + d/2");

  constexpr int kSines = 3;
  std::mt19937_64 rng(profile.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  double x0[2] = {0.0, 0.0};
  double amp[kSines];
  double freq[kSines][2] = {};
  for (int j = 0; j < profile.dim; ++j) x0[j] = unit(rng);
  for (int m = 0; m < kSines; ++m) {
    amp[m] = 0.6 + 0.4 * unit(rng);
    for (int j = 0; j < profile.dim; ++j) freq[m][j] = 1.5 * unit(rng);
  }

  SpectrumFunction spec(fine);
  int k[2];
  for (std::size_t i = 0; i < spec.size(); ++i) {
    spec.modes(i, k);
    double xi[2] = {0.0, 0.0};
    for (int j = 0; j < fine.dim(); ++j) xi[j] = fine.frequency(k[j]);
    double theta = 0.0;
    for (int j = 0; j < fine.dim(); ++j) theta -= xi[j] * x0[j];
    for (int m = 0; m < kSines; ++m) {
      double dot = 0.0;
      for (int j = 0; j < fine.dim(); ++j) dot += freq[m][j] * xi[j];
      theta += amp[m] * std::sin(dot);
    }
    spec[i] = std::polar(std::pow(1.0 + spec.frequency_norm2(i), -0.5 * profile.beta), theta);
  }
  // theta is odd, so only the Nyquist rows lack a Hermitian partner; taking
  // the real part symmetrizes them.
  GridFunction values = idft(spec);
  for (auto& v : values.values()) v = v.real();
  ContinuumField field(std::move(values));
  const double norm = continuum_sobolev_norm(field, profile.delta);
  GridFunction scaled = field.samples();
  scaled *= 1.0 / norm;
  return ContinuumField(std::move(scaled));
}

}  // namespace dnls
