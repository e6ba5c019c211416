#pragma once

#include "subcell/config.hpp"
#include "subcell/diagnostics.hpp"
#include "subcell/semidiscretization.hpp"
#include "subcell/subcell_sbp.hpp"
#include "subcell/time_integration.hpp"

#include <complex>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace subcell {

/// A configured semi-discretisation with its initial data and, where known,
/// the exact solution.
struct Problem {
  std::shared_ptr<const Semidiscretization> sd;
  InitialFunction initial;
  ExactSolution exact;  // empty when no closed form is available
};

Problem build_problem(const ExperimentConfig& cfg, int n_u, int n_v);
inline Problem build_problem(const ExperimentConfig& cfg) {
  return build_problem(cfg, cfg.n_u(), cfg.n_v());
}

std::vector<std::string> variable_names(const std::string& law);

// ---------------------------------------------------------------- verify

/// Hand-derived d = 1 operators on [-1, 1] split at 0.
struct GoldenOperator {
  std::string name;
  SubcellFamily family;
  std::vector<double> x;
  Matrix P, B, S, D;
};
std::vector<GoldenOperator> golden_operators();

struct GoldenCheck {
  std::string name;
  double max_deviation = 0.0;
  bool passed = false;
};

struct VerifySummary {
  std::vector<Report> reports;
  std::vector<GoldenCheck> golden;
  bool passed() const;
};

/// Builds every (degree, family, split) operator on [-1, 1] and runs the
/// axiom, existence and structure checks plus the golden comparison.
VerifySummary run_verify(const std::vector<int>& degrees,
                         const std::vector<SubcellFamily>& families,
                         const std::vector<double>& splits);

// ---------------------------------------------------------------- convergence

struct ConvergenceRow {
  int n = 0;
  std::size_t var = 0;
  double l2 = 0.0;
  double linf = 0.0;
  std::optional<double> eoc;
};

struct ConvergenceResult {
  std::vector<std::string> variables;
  std::vector<ConvergenceRow> rows;  // grouped by N, then variable
  /// Order of the finest pair for each variable.
  std::vector<std::optional<double>> final_orders() const;
};

/// One run per entry of cfg.elements (N elements on each mesh) to t_end.
ConvergenceResult run_convergence(const ExperimentConfig& cfg);

// ---------------------------------------------------------------- run

struct RunResult {
  std::vector<DiagnosticsRecord> records;
  Vector final_state;
  double final_time = 0.0;
  IntegrationStats stats;
  bool subcell_warning = false;
  std::optional<std::string> failure;  // integration or state failure

  double initial_max_norm() const;
  double peak_max_norm() const;
  double max_integral_drift() const;
  double max_energy_rate() const;
  std::optional<double> max_entropy_rate() const;
  std::optional<double> min_entropy_rate() const;
};

RunResult run_simulation(const ExperimentConfig& cfg, const Problem& problem);
inline RunResult run_simulation(const ExperimentConfig& cfg) {
  return run_simulation(cfg, build_problem(cfg));
}

// ---------------------------------------------------------------- spectrum

struct SpectrumResult {
  std::vector<std::complex<double>> eigenvalues;
  double abscissa = 0.0;
  double trace = 0.0;
};

/// Jacobian spectrum at the initial state.
SpectrumResult compute_spectrum(const ExperimentConfig& cfg);

// ---------------------------------------------------------------- fluxes

struct FluxComparison {
  FluxKind first = FluxKind::hll;
  FluxKind second = FluxKind::rusanov;
  RunResult first_run;
  RunResult second_run;
};

/// Runs cfg with the sub-cell-point flux set to cfg.subcell_flux and then
/// to cfg.compare_flux.
FluxComparison compare_fluxes(const ExperimentConfig& cfg);

}  // namespace subcell
