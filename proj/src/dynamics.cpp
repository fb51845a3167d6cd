#include "dnls/dynamics.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

namespace dnls {

namespace {

bool finite_values(std::span<const Complex> v) {
  for (auto z : v)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  return true;
}

double power_of_modulus(Complex z, int e) {
  const double a2 = std::norm(z);
  double out = 1.0;
  for (int i = 0; i < e / 2; ++i) out *= a2;
  if (e % 2 != 0) out *= std::sqrt(a2);
  return out;
}

std::vector<GridFunction> product_jet(const std::vector<GridFunction>& a,
                                      const std::vector<GridFunction>& b, int order) {
  std::vector<GridFunction> out;
  out.reserve(order + 1);
  const auto& g = a.front().grid();
  for (int m = 0; m <= order; ++m) {
    GridFunction c(g);
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      for (std::size_t i = 0; i < c.size(); ++i) c[i] += binom * a[j][i] * b[m - j][i];
      binom = binom * (m - j) / (j + 1);
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace

ModelParams::ModelParams(int p_, double lambda_, int d_) : p(p_), lambda(lambda_), d(d_) {
  if (d != 1 && d != 2) throw ArgumentError("ModelParams: d must be 1 or 2");
  if (p < 3 || p % 2 == 0) throw ArgumentError("ModelParams: p must be an odd integer >= 3");
  if (lambda == 1.0 || lambda == 0.0) return;
  if (lambda == -1.0) {
    if (d != 1 || p != 3)
      throw ArgumentError("ModelParams: focusing case requires d = 1 and p = 3");
    return;
  }
  throw ArgumentError("ModelParams: lambda must be +1, -1 or 0");
}

Integrator::Integrator(ModelParams params_, double tau_) : params(params_), tau(tau_) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ArgumentError("Integrator: tau must be positive");
}

GridFunction nonlinearity(const GridFunction& u, const ModelParams& params) {
  GridFunction out(u.grid());
  for (std::size_t i = 0; i < u.size(); ++i)
    out[i] = params.lambda * power_of_modulus(u[i], params.p - 1) * u[i];
  return out;
}

SplitStepSolver::SplitStepSolver(const LatticeGrid& grid, const Integrator& integrator,
                                 Dispersion dispersion)
    : grid_(grid),
      integrator_(integrator),
      dispersion_(dispersion),
      drift_(grid, integrator.tau, dispersion) {
  if (grid.dim() != integrator.params.d)
    throw ArgumentError("SplitStepSolver: grid dimension differs from model dimension");
}

void SplitStepSolver::kick(std::span<Complex> v, double dt) const {
  const double lambda = integrator_.params.lambda;
  if (lambda == 0.0) return;
  const int e = integrator_.params.p - 1;
  for (auto& z : v) z *= std::polar(1.0, -lambda * power_of_modulus(z, e) * dt);
}

void SplitStepSolver::run(std::span<Complex> v, long steps, double dt,
                          const SpectralPropagator& drift, double t_start) const {
  if (steps <= 0) return;
  constexpr long kCheckEvery = 64;
  double healthy = t_start;
  // Consecutive half kicks are merged into one full kick.
  kick(v, 0.5 * dt);
  for (long s = 0; s < steps; ++s) {
    drift.apply(v);
    kick(v, s + 1 == steps ? 0.5 * dt : dt);
    if ((s + 1) % kCheckEvery == 0 || s + 1 == steps) {
      if (!finite_values(v))
        throw BlowUpError("blow-up/instability: non-finite values after t = " +
                              std::to_string(healthy),
                          healthy);
      healthy = t_start + (s + 1) * dt;
    }
  }
}

void SplitStepSolver::advance(GridFunction& u, double duration, double t_start) const {
  require_same_grid(u.grid(), grid_, "SplitStepSolver::advance");
  if (!(duration >= 0.0)) throw ArgumentError("SplitStepSolver: duration must be >= 0");
  const double tau = integrator_.tau;
  long full = static_cast<long>(std::floor(duration / tau + 1e-9));
  double rest = duration - full * tau;
  if (rest < 0.0) {
    rest = 0.0;
  }
  if (rest <= 1e-12 * tau) rest = 0.0;
  run(u.values(), full, tau, drift_, t_start);
  if (rest > 0.0) {
    SpectralPropagator shortp(grid_, rest, dispersion_);
    run(u.values(), 1, rest, shortp, t_start + full * tau);
  }
}

GridFunction step_strang(const GridFunction& u, const Integrator& integrator) {
  GridFunction out = u;
  SplitStepSolver(u.grid(), integrator).advance(out, integrator.tau);
  return out;
}

GridFunction integrate(const GridFunction& u0, const Integrator& integrator, double T,
                       const IntegrationOptions& options) {
  if (!(T >= 0.0) || !std::isfinite(T)) throw ArgumentError("integrate: T must be >= 0");
  const SplitStepSolver solver(u0.grid(), integrator, options.dispersion);
  GridFunction u = u0;
  auto notify = [&](double t) {
    for (const auto& obs : options.observers) obs(t, u);
  };
  notify(0.0);
  const int segments = std::max(1, options.samples);
  double t = 0.0;
  for (int i = 1; i <= segments; ++i) {
    const double target = T * i / segments;
    solver.advance(u, target - t, t);
    t = target;
    if (options.samples > 0 || i == segments) notify(t);
  }
  return u;
}

double mass(const GridFunction& u) { return inner_product(u, u).real(); }

double energy(const GridFunction& u, const ModelParams& params) {
  double kinetic = 0.0;
  for (int j = 1; j <= u.grid().dim(); ++j) {
    const auto du = forward_difference(u, j);
    kinetic += mass(du);
  }
  double potential = 0.0;
  if (params.lambda != 0.0) {
    for (auto z : u.values()) potential += power_of_modulus(z, params.p + 1);
    potential *= u.grid().cell_volume() * params.lambda / (params.p + 1);
  }
  return 0.5 * kinetic + potential;
}

DiagnosticsRecorder::DiagnosticsRecorder(ModelParams params, int max_order)
    : params_(params), max_order_(max_order) {
  if (max_order < 2) throw ArgumentError("DiagnosticsRecorder: max_order must be >= 2");
}

Observer DiagnosticsRecorder::observer() {
  return [this](double t, const GridFunction& u) { record(t, u); };
}

void DiagnosticsRecorder::record(double t, const GridFunction& u) {
  Row row{t, mass(u), energy(u, params_), {}};
  for (int m = 1; m <= max_order_; ++m) row.norms.push_back(sobolev_norm(u, SobolevIndex(m)));
  rows_.push_back(std::move(row));
}

void DiagnosticsRecorder::write_csv(std::ostream& os) const {
  os << "t,mass,energy";
  for (int m = 1; m <= max_order_; ++m) os << ",H" << m;
  os << '\n' << std::setprecision(17);
  for (const auto& r : rows_) {
    os << r.t << ',' << r.mass << ',' << r.energy;
    for (double v : r.norms) os << ',' << v;
    os << '\n';
  }
}

std::vector<GridFunction> nonlinearity_jet(const TimeJet& jet, int order, const ModelParams& params) {
  if (order < 0 || order > jet.order()) throw ArgumentError("nonlinearity_jet: order out of range");
  const auto& g = jet.layers.front().grid();
  if (params.lambda == 0.0) return std::vector<GridFunction>(order + 1, GridFunction(g));
  std::vector<GridFunction> u(jet.layers.begin(), jet.layers.begin() + order + 1);
  std::vector<GridFunction> ubar;
  for (const auto& layer : u) ubar.push_back(layer.conj());
  auto acc = u;
  for (int c = 1; c < (params.p + 1) / 2; ++c) acc = product_jet(acc, u, order);
  for (int c = 0; c < (params.p - 1) / 2; ++c) acc = product_jet(acc, ubar, order);
  for (auto& layer : acc) layer *= params.lambda;
  return acc;
}

TimeJet time_jet(const GridFunction& u, int k, const ModelParams& params) {
  if (k < 0) throw ArgumentError("time_jet: k must be >= 0");
  TimeJet jet;
  jet.layers.push_back(u);
  const Complex i_unit(0.0, 1.0);
  for (int n = 0; n < k; ++n) {
    GridFunction next = apply_laplacian(jet.layers[n]);
    if (params.lambda != 0.0) next -= nonlinearity_jet(jet, n, params)[n];
    next *= i_unit;
    if (!next.all_finite())
      throw ResourceError("time_jet: layer " + std::to_string(n + 1) + " overflowed");
    jet.layers.push_back(std::move(next));
  }
  return jet;
}

ReferenceSolution::ReferenceSolution(ReferenceKind kind, LatticeGrid grid, ModelParams params)
    : kind_(kind), grid_(grid), params_(params) {}

ReferenceSolution ReferenceSolution::soliton(const LatticeGrid& fine, const ModelParams& params,
                                             double x0) {
  if (params.lambda != -1.0 || params.d != 1 || params.p != 3 || fine.dim() != 1)
    throw ArgumentError("soliton reference requires lambda = -1, d = 1, p = 3");
  ReferenceSolution ref(ReferenceKind::soliton, fine, params);
  ref.x0_ = x0;
  return ref;
}

ReferenceSolution ReferenceSolution::fine_grid(ContinuumField psi0, const ModelParams& params,
                                               double tau) {
  if (!(tau > 0.0)) throw ArgumentError("fine_grid reference: tau must be positive");
  ReferenceSolution ref(ReferenceKind::fine_grid, psi0.grid(), params);
  ref.tau_ = tau;
  ref.psi0_.emplace(std::move(psi0));
  return ref;
}

ContinuumField ReferenceSolution::at(double t) const {
  if (kind_ == ReferenceKind::soliton) {
    const double x0 = x0_;
    return ContinuumField(GridFunction::from_function(grid_, [x0, t](std::span<const double> x) {
      return std::polar(std::sqrt(2.0) / std::cosh(x[0] - x0), t);
    }));
  }
  GridFunction u = psi0_->samples();
  SplitStepSolver(grid_, Integrator(params_, tau_), Dispersion::continuum).advance(u, t);
  return ContinuumField(std::move(u));
}

double ReferenceSolution::richardson_gap(const ContinuumField& reference_at_t, double t,
                                         double s) const {
  if (kind_ == ReferenceKind::soliton) return 0.0;
  const LatticeGrid coarse(grid_.dim(), 2.0 * grid_.spacing(), grid_.points_per_axis() / 2);
  GridFunction u = pointwise_project(*psi0_, coarse);
  SplitStepSolver(coarse, Integrator(params_, tau_), Dispersion::continuum).advance(u, t);
  const auto lifted = shannon_interpolate(u, 1);
  return continuum_sobolev_norm(ContinuumField(reference_at_t.samples() - lifted.samples()), s);
}

void ReferenceSolution::require_converged(double gap, double smallest_error) {
  if (!(gap < 0.05 * smallest_error))
    throw ReferenceNotConvergedError("reference not converged: Richardson gap " +
                                     std::to_string(gap) + " is not below 5% of " +
                                     std::to_string(smallest_error));
}

double soliton_residual(const LatticeGrid& fine, double x0, double tau, double T) {
  const ModelParams focusing(3, -1.0, 1);
  const auto ref = ReferenceSolution::soliton(fine, focusing, x0);
  GridFunction u = ref.at(0.0).samples();
  SplitStepSolver(fine, Integrator(focusing, tau), Dispersion::continuum).advance(u, T);
  return lp_norm(u - ref.at(T).samples(), 2.0);
}

}  // namespace dnls
