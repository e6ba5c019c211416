#pragma once

#include "subcell/semidiscretization.hpp"

#include <complex>
#include <functional>
#include <optional>
#include <vector>

namespace subcell {

using ExactSolution = std::function<State(double x, double t)>;

/// I(u, v) = 1^T P_ubar u + 1^T P_v v, one entry per conserved variable.
State overset_integral(const Semidiscretization& sd, const Vector& w);
/// E = u^T P_ubar u + v^T P_v v with the law's energy density.
double overset_energy(const Semidiscretization& sd, const Vector& w);
/// Sum of entropy over the counted quadrature.
double overset_entropy(const Semidiscretization& sd, const Vector& w);

/// Chain-rule time derivatives evaluated from rhs(t, w).
State integral_rate(const Semidiscretization& sd, double t, const Vector& w);
double energy_rate(const Semidiscretization& sd, double t, const Vector& w);
double entropy_rate(const Semidiscretization& sd, double t, const Vector& w);

/// dI/dt - (f*_a - f*_d): zero for a conservative coupling.
State conservation_residual(const Semidiscretization& sd, double t, const Vector& w);

/// Right-hand side of the advection energy balance with the upwind flux:
///   alpha [g^2 - v_d^2] - alpha [g - u_a]^2 - alpha [u_bL - v_b]^2
///   - alpha * sum over counted interior faces of the squared jump,
/// where g is the inflow state (v_d when periodic).
double advection_energy_balance(const Semidiscretization& sd, double t, const Vector& w);

struct SolutionError {
  State l2{};
  State linf{};
};

/// L2 error over the counted quadrature (overlap counted once); L-infinity
/// error as the nodal maximum over both meshes.
SolutionError solution_error(const Semidiscretization& sd, const Vector& w,
                             const ExactSolution& exact, double t);

/// log(e_{k-1} / e_k) / log(N_k / N_{k-1}); nullopt for the first entry and
/// whenever an error is not positive.
std::vector<std::optional<double>> experimental_orders(const std::vector<double>& errors,
                                                       const std::vector<double>& resolutions);

std::vector<std::complex<double>> eigenvalues(const Matrix& jacobian);
double spectral_abscissa(const std::vector<std::complex<double>>& spectrum);

/// Everything sampled at one instant of a run.
struct DiagnosticsRecord {
  double time = 0.0;
  State integral{};
  State integral_change{};
  double energy = 0.0;
  double energy_rate = 0.0;
  std::optional<double> entropy;
  std::optional<double> entropy_rate;
  double max_norm = 0.0;
  std::optional<SolutionError> error;
};

DiagnosticsRecord sample_diagnostics(const Semidiscretization& sd, double t, const Vector& w,
                                     const State& initial_integral,
                                     const ExactSolution& exact = {});

}  // namespace subcell
