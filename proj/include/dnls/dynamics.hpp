#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dnls/interp.hpp"
#include "dnls/lattice.hpp"
#include "dnls/spectral.hpp"

namespace dnls {

/// NaN/Inf appeared during time stepping.
class BlowUpError : public std::runtime_error {
 public:
  BlowUpError(const std::string& what, double last_healthy_time)
      : std::runtime_error(what), last_healthy_time_(last_healthy_time) {}
  double last_healthy_time() const { return last_healthy_time_; }

 private:
  double last_healthy_time_;
};

/// Reference solution failed its self-consistency check.
class ReferenceNotConvergedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Computation exceeded representable range (e.g. jet layers overflow).
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Nonlinearity power p, sign lambda and dimension d.
/// Accepted: lambda = +1 with d in {1,2} and odd p >= 3; lambda = -1 with
/// d = 1, p = 3; lambda = 0 (the linear equation) with any odd p >= 3.
struct ModelParams {
  ModelParams(int p, double lambda, int d);
  int p;
  double lambda;
  int d;
};

struct Integrator {
  Integrator(ModelParams params, double tau);
  ModelParams params;
  double tau;
};

/// lambda |u|^(p-1) u pointwise.
GridFunction nonlinearity(const GridFunction& u, const ModelParams& params);

/// One Strang step: half kick, exact lattice drift, half kick.
GridFunction step_strang(const GridFunction& u, const Integrator& integrator);

/// Strang splitting with cached propagators. The drift uses either the
/// lattice symbol (DNLS) or the continuum symbol (NLS on a fine surrogate).
class SplitStepSolver {
 public:
  SplitStepSolver(const LatticeGrid& grid, const Integrator& integrator,
                  Dispersion dispersion = Dispersion::lattice);

  /// Advances u by `duration`: whole steps of tau, then one short step.
  /// `t_start` only labels the last healthy time in a BlowUpError.
  void advance(GridFunction& u, double duration, double t_start = 0.0) const;

 private:
  void run(std::span<Complex> v, long steps, double dt, const SpectralPropagator& drift,
           double t_start) const;
  void kick(std::span<Complex> v, double dt) const;

  LatticeGrid grid_;
  Integrator integrator_;
  Dispersion dispersion_;
  SpectralPropagator drift_;
};

using Observer = std::function<void(double t, const GridFunction& u)>;

struct IntegrationOptions {
  /// Observers fire at t_i = i T / samples, i = 0..samples (at 0 and T when samples = 0).
  int samples = 0;
  std::vector<Observer> observers;
  Dispersion dispersion = Dispersion::lattice;
};

GridFunction integrate(const GridFunction& u0, const Integrator& integrator, double T,
                       const IntegrationOptions& options = {});

/// ||u||_{L^2}^2
double mass(const GridFunction& u);

/// 1/2 ||u||_{Hdot^1}^2 + lambda/(p+1) ||u||_{L^{p+1}}^{p+1}
double energy(const GridFunction& u, const ModelParams& params);

/// Records t, mass, energy and H^m norms; CSV header "t,mass,energy,H1,H2[,Hm...]".
class DiagnosticsRecorder {
 public:
  explicit DiagnosticsRecorder(ModelParams params, int max_order = 2);
  Observer observer();
  void record(double t, const GridFunction& u);
  void write_csv(std::ostream& os) const;

  struct Row {
    double t;
    double mass;
    double energy;
    std::vector<double> norms;
  };
  const std::vector<Row>& rows() const { return rows_; }

 private:
  ModelParams params_;
  int max_order_;
  std::vector<Row> rows_;
};

/// Layers [u, d_t u, ..., d_t^k u] of a solution at one instant.
struct TimeJet {
  int order() const { return static_cast<int>(layers.size()) - 1; }
  std::vector<GridFunction> layers;
};

/// d_t^{n+1} u = i (Delta_h d_t^n u - lambda d_t^n(u^{(p+1)/2} conj(u)^{(p-1)/2})),
/// with the nonlinear term expanded by the Leibniz rule.
TimeJet time_jet(const GridFunction& u, int k, const ModelParams& params);

/// Time jet of lambda |u|^(p-1) u up to the given order, from a solution jet.
std::vector<GridFunction> nonlinearity_jet(const TimeJet& jet, int order, const ModelParams& params);

enum class ReferenceKind { fine_grid, soliton };

/// Surrogate for the NLS solution psi on a fine grid.
///  - soliton: sqrt(2) sech(x - x0) e^{it}, focusing cubic d = 1 only.
///  - fine_grid: split-step NLS (continuum symbol) from psi0 on psi0's grid.
class ReferenceSolution {
 public:
  static ReferenceSolution soliton(const LatticeGrid& fine, const ModelParams& params, double x0);
  static ReferenceSolution fine_grid(ContinuumField psi0, const ModelParams& params, double tau);

  ReferenceKind kind() const { return kind_; }
  const LatticeGrid& grid() const { return grid_; }
  ContinuumField at(double t) const;

  /// fine_grid: H^s distance between `reference_at_t` (this reference at t)
  /// and the same computation on the grid of twice the spacing. soliton: 0.
  double richardson_gap(const ContinuumField& reference_at_t, double t, double s) const;

  /// Throws ReferenceNotConvergedError unless gap < 5% of smallest_error.
  static void require_converged(double gap, double smallest_error);

 private:
  ReferenceSolution(ReferenceKind kind, LatticeGrid grid, ModelParams params);

  ReferenceKind kind_;
  LatticeGrid grid_;
  ModelParams params_;
  double x0_ = 0.0;
  double tau_ = 0.0;
  std::optional<ContinuumField> psi0_;
};

/// Continuum split-step residual of the soliton formula at time T (L^2 norm).
double soliton_residual(const LatticeGrid& fine, double x0, double tau, double T);

}  // namespace dnls
