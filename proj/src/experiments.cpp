#include "subcell/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace subcell {

namespace {

double wrap(double x, double left, double length) {
  double r = std::fmod(x - left, length);
  if (r < 0.0) r += length;
  return left + r;
}

std::shared_ptr<const ConservationLaw> make_configured_law(const ExperimentConfig& cfg) {
  if (cfg.law == "advection") return std::make_shared<Advection>(cfg.alpha);
  if (cfg.law == "burgers") return std::make_shared<Burgers>();
  if (cfg.law == "maxwell") return std::make_shared<Maxwell>(cfg.speed);
  if (cfg.law == "euler") return std::make_shared<Euler>(cfg.gamma);
  throw ConfigError("unknown law '" + cfg.law + "'");
}

OversetMesh make_mesh(const ExperimentConfig& cfg, int n_u, int n_v) {
  if (cfg.coupling == CouplingMode::baseline)
    return baseline_overset_mesh(cfg.domain, n_u, n_v, cfg.degree);
  return build_overset_mesh(cfg.domain, n_u, n_v, cfg.degree, cfg.family, cfg.split);
}

}  // namespace

std::vector<std::string> variable_names(const std::string& law) {
  if (law == "maxwell") return {"E", "B"};
  if (law == "euler") return {"rho", "rho_v", "rho_e"};
  return {"w"};
}

Problem build_problem(const ExperimentConfig& cfg, int n_u, int n_v) {
  SolverConfig solver;
  solver.law = make_configured_law(cfg);
  solver.surface_flux = cfg.surface_flux;
  solver.subcell_flux = cfg.subcell_flux;
  solver.volume_flux = cfg.volume_flux;
  solver.periodic = cfg.periodic;

  const double omega = cfg.wavenumber * std::numbers::pi;
  const double offset = cfg.offset;
  const double amplitude = cfg.amplitude;
  const double a = cfg.domain.a;
  const double length = cfg.domain.length();
  auto profile = [=](double x) { return offset + amplitude * std::sin(omega * x); };

  Problem problem;
  if (cfg.law == "advection") {
    const double alpha = cfg.alpha;
    problem.initial = [=](double x) { return State{profile(x), 0.0, 0.0}; };
    problem.exact = [=](double x, double t) {
      return State{profile(wrap(x - alpha * t, a, length)), 0.0, 0.0};
    };
  } else if (cfg.law == "maxwell") {
    // Right-going data E = c B.
    const double c = cfg.speed;
    problem.initial = [=](double x) { return State{c * profile(x), profile(x), 0.0}; };
    problem.exact = [=](double x, double t) {
      const double p = profile(wrap(x - c * t, a, length));
      return State{c * p, p, 0.0};
    };
  } else if (cfg.law == "burgers") {
    problem.initial = [=](double x) { return State{profile(x), 0.0, 0.0}; };
  } else {
    // rho = offset + A sin(omega (x - t)), rho v = rho, rho e = rho^2.
    auto state = [=](double x, double t) {
      const double rho = offset + amplitude * std::sin(omega * (x - t));
      return State{rho, rho, rho * rho};
    };
    problem.initial = [=](double x) { return state(x, 0.0); };
    if (cfg.manufactured_source) {
      const double gamma = cfg.gamma;
      problem.exact = state;
      solver.source = [=](double x, double t) {
        const double rho = offset + amplitude * std::sin(omega * (x - t));
        const double s = omega * amplitude * std::cos(omega * (x - t)) * (2.0 * rho - 0.5) * (gamma - 1.0);
        return State{0.0, s, s};
      };
    }
  }
  if (cfg.manufactured_source && cfg.law != "euler")
    throw ConfigError("law.source = manufactured is defined for euler only");

  if (!cfg.periodic) {
    if (!problem.exact) throw ConfigError("non-periodic runs need a law with a closed-form solution");
    const auto exact = problem.exact;
    const double left = cfg.domain.a;
    const double right = cfg.domain.d;
    solver.left_boundary = [=](double t) { return exact(left, t); };
    solver.right_boundary = [=](double t) { return exact(right, t); };
  }

  problem.sd = std::make_shared<Semidiscretization>(make_mesh(cfg, n_u, n_v), std::move(solver));
  return problem;
}

// ---------------------------------------------------------------- verify

std::vector<GoldenOperator> golden_operators() {
  GoldenOperator lobatto;
  lobatto.name = "lobatto d=1";
  lobatto.family = SubcellFamily::lobatto;
  lobatto.x = {-1.0, 0.0, 0.0, 1.0};
  lobatto.P = Vector::Constant(4, 0.5).asDiagonal();
  lobatto.B = Matrix::Zero(4, 4);
  lobatto.B.diagonal() << -1.0, 1.0, -1.0, 1.0;
  lobatto.S = Matrix::Zero(4, 4);
  lobatto.S(0, 1) = lobatto.S(2, 3) = 0.5;
  lobatto.S(1, 0) = lobatto.S(3, 2) = -0.5;
  lobatto.D.resize(4, 4);
  lobatto.D << -1, 1, 0, 0,
               -1, 1, 0, 0,
               0, 0, -1, 1,
               0, 0, -1, 1;

  GoldenOperator radau;
  radau.name = "radau d=1";
  radau.family = SubcellFamily::radau;
  radau.x = {-1.0, -1.0 / 3.0, 1.0 / 3.0, 1.0};
  radau.P = Vector{{0.25, 0.75, 0.75, 0.25}}.asDiagonal();
  radau.B.resize(4, 4);
  radau.B << -1, -1, 0, 0,
             -1, 3, 0, 0,
             0, 0, -3, 1,
             0, 0, 1, 1;
  radau.B *= 0.75;
  radau.S = 0.75 * lobatto.S / 0.5;
  radau.D = 1.5 * lobatto.D;
  return {lobatto, radau};
}

bool VerifySummary::passed() const {
  return std::all_of(reports.begin(), reports.end(), [](const Report& r) { return r.passed(); }) &&
         std::all_of(golden.begin(), golden.end(), [](const GoldenCheck& g) { return g.passed; });
}

VerifySummary run_verify(const std::vector<int>& degrees, const std::vector<SubcellFamily>& families,
                         const std::vector<double>& splits) {
  VerifySummary summary;
  for (int d : degrees) {
    const double tol = tolerance_for_degree(d);
    for (auto family : families) {
      for (double split : splits) {
        const auto op = make_subcell_operator(d, {-1.0, 1.0}, split, family);
        Report report("d=" + std::to_string(d) + " " + to_string(family) + " split=" +
                      std::to_string(split));
        report.merge(verify_subcell(op, tol));
        const auto [first, second] = existence_residuals(op);
        report.check("existence equation 1", first.cwiseAbs().maxCoeff(), tol);
        report.check("existence equation 2", second.cwiseAbs().maxCoeff(), tol);
        report.merge(structural_check(op, tol));
        summary.reports.push_back(std::move(report));
      }
    }
  }
  for (const auto& golden : golden_operators()) {
    const auto op = make_subcell_operator(1, {-1.0, 1.0}, 0.0, golden.family);
    double dev = 0.0;
    for (std::size_t i = 0; i < golden.x.size(); ++i) dev = std::max(dev, std::abs(op.x[i] - golden.x[i]));
    dev = std::max({dev, (op.P() - golden.P).cwiseAbs().maxCoeff(),
                    (op.B() - golden.B).cwiseAbs().maxCoeff(),
                    (op.S() - golden.S).cwiseAbs().maxCoeff(),
                    (op.D - golden.D).cwiseAbs().maxCoeff()});
    summary.golden.push_back({golden.name, dev, dev <= 1e-14});
  }
  return summary;
}

// ---------------------------------------------------------------- convergence

std::vector<std::optional<double>> ConvergenceResult::final_orders() const {
  std::vector<std::optional<double>> orders(variables.size());
  for (const auto& row : rows) orders[row.var] = row.eoc;
  return orders;
}

ConvergenceResult run_convergence(const ExperimentConfig& cfg) {
  ConvergenceResult result;
  result.variables = variable_names(cfg.law);
  const std::size_t nv = result.variables.size();
  std::vector<std::vector<double>> errors(nv);
  std::vector<double> resolutions;

  for (int n : cfg.elements) {
    const Problem problem = build_problem(cfg, n, n);
    if (!problem.exact) throw ConfigError("convergence needs a closed-form solution");
    const auto& sd = *problem.sd;
    Vector w = sd.interpolate(problem.initial);
    IntegratorOptions options;
    options.atol = cfg.atol;
    options.rtol = cfg.rtol;
    options.max_steps = cfg.max_steps;
    try {
      integrate([&](double t, const Vector& y, Vector& dy) { sd.rhs(t, y, dy); }, w, cfg.t_start,
                cfg.t_end, options);
    } catch (const Error& e) {
      throw Error("convergence run N = " + std::to_string(n) + " failed: " + e.what());
    }
    const auto err = solution_error(sd, w, problem.exact, cfg.t_end);
    resolutions.push_back(n);
    for (std::size_t v = 0; v < nv; ++v) {
      errors[v].push_back(err.l2[v]);
      result.rows.push_back({n, v, err.l2[v], err.linf[v], std::nullopt});
    }
  }
  for (std::size_t v = 0; v < nv; ++v) {
    const auto orders = experimental_orders(errors[v], resolutions);
    for (std::size_t k = 0; k < orders.size(); ++k) result.rows[k * nv + v].eoc = orders[k];
  }
  return result;
}

// ---------------------------------------------------------------- run

double RunResult::initial_max_norm() const { return records.empty() ? 0.0 : records.front().max_norm; }

double RunResult::peak_max_norm() const {
  double m = 0.0;
  for (const auto& r : records) m = std::max(m, r.max_norm);
  return m;
}

double RunResult::max_integral_drift() const {
  double m = 0.0;
  for (const auto& r : records)
    for (double d : r.integral_change) m = std::max(m, std::abs(d));
  return m;
}

double RunResult::max_energy_rate() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& r : records) m = std::max(m, r.energy_rate);
  return m;
}

std::optional<double> RunResult::max_entropy_rate() const {
  std::optional<double> m;
  for (const auto& r : records)
    if (r.entropy_rate) m = std::max(m.value_or(*r.entropy_rate), *r.entropy_rate);
  return m;
}

std::optional<double> RunResult::min_entropy_rate() const {
  std::optional<double> m;
  for (const auto& r : records)
    if (r.entropy_rate) m = std::min(m.value_or(*r.entropy_rate), *r.entropy_rate);
  return m;
}

RunResult run_simulation(const ExperimentConfig& cfg, const Problem& problem) {
  const auto& sd = *problem.sd;
  RunResult result;
  result.subcell_warning = sd.subcell_warning();
  Vector w = sd.interpolate(problem.initial);
  const State initial_integral = overset_integral(sd, w);

  IntegratorOptions options;
  options.atol = cfg.atol;
  options.rtol = cfg.rtol;
  options.max_steps = cfg.max_steps;
  const auto samples = uniform_samples(cfg.t_start, cfg.t_end, std::max<std::size_t>(cfg.samples, 1));
  result.final_time = cfg.t_start;
  try {
    result.stats = integrate(
        [&](double t, const Vector& y, Vector& dy) { sd.rhs(t, y, dy); }, w, cfg.t_start, cfg.t_end,
        options, samples, [&](double t, const Vector& y) {
          result.records.push_back(sample_diagnostics(sd, t, y, initial_integral, problem.exact));
          result.final_time = t;
        });
  } catch (const IntegrationError& e) {
    result.failure = e.what();
  } catch (const Error& e) {
    result.failure = std::string(e.what()) + " after t = " + std::to_string(result.final_time);
  }
  result.final_state = w;
  return result;
}

// ---------------------------------------------------------------- spectrum

SpectrumResult compute_spectrum(const ExperimentConfig& cfg) {
  const Problem problem = build_problem(cfg);
  const auto& sd = *problem.sd;
  const Matrix jac = sd.jacobian(cfg.t_start, sd.interpolate(problem.initial));
  SpectrumResult result;
  result.eigenvalues = eigenvalues(jac);
  result.abscissa = spectral_abscissa(result.eigenvalues);
  result.trace = jac.trace();
  return result;
}

// ---------------------------------------------------------------- fluxes

FluxComparison compare_fluxes(const ExperimentConfig& cfg) {
  if (!cfg.compare_flux) throw ConfigError("compare-fluxes needs flux.compare");
  FluxComparison cmp;
  cmp.first = cfg.subcell_flux;
  cmp.second = *cfg.compare_flux;
  ExperimentConfig first = cfg;
  ExperimentConfig second = cfg;
  second.subcell_flux = *cfg.compare_flux;
  cmp.first_run = run_simulation(first);
  cmp.second_run = run_simulation(second);
  return cmp;
}

}  // namespace subcell
