// Acceptance run: one PASS/FAIL line per headline criterion, nonzero exit if
// any fails. Reference numbers are the published tables; golden matrices are
// typed in here rather than taken from the library.

#include "subcell/config.hpp"
#include "subcell/diagnostics.hpp"
#include "subcell/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace subcell;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

ExperimentConfig preset(const std::string& name) {
  return load_config(std::string(SUBCELL_PRESET_DIR) + "/" + name + ".ini");
}

double max_entry(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Matrix mat2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double golden_deviation(SubcellFamily family, const std::vector<double>& x, const Vector& p,
                        const Matrix& B, const Matrix& S, const Matrix& D) {
  const auto op = make_subcell_operator(1, {-1.0, 1.0}, 0.0, family);
  double dev = 0.0;
  for (std::size_t i = 0; i < 4; ++i) dev = std::max(dev, std::abs(op.x[i] - x[i]));
  dev = std::max(dev, (op.weights() - p).cwiseAbs().maxCoeff());
  return std::max({dev, max_entry(op.B() - B), max_entry(op.S() - S), max_entry(op.D - D)});
}

Outcome golden() {
  const Matrix skew = mat2(0, 1, -1, 0);
  const double lob = golden_deviation(
      SubcellFamily::lobatto, {-1, 0, 0, 1}, Vector::Constant(4, 0.5),
      block_diag(mat2(-1, 0, 0, 1), mat2(-1, 0, 0, 1)), 0.5 * block_diag(skew, skew),
      block_diag(mat2(-1, 1, -1, 1), mat2(-1, 1, -1, 1)));
  Vector pr(4);
  pr << 0.25, 0.75, 0.75, 0.25;
  const double rad = golden_deviation(
      SubcellFamily::radau, {-1, -1.0 / 3, 1.0 / 3, 1}, pr,
      0.75 * block_diag(mat2(-1, -1, -1, 3), mat2(-3, 1, 1, 1)), 0.75 * block_diag(skew, skew),
      1.5 * block_diag(mat2(-1, 1, -1, 1), mat2(-1, 1, -1, 1)));
  return {lob <= 1e-14 && rad <= 1e-14,
          "max deviation lobatto " + fmt("%.2e", lob) + ", radau " + fmt("%.2e", rad)};
}

Outcome axioms() {
  int total = 0, passed = 0;
  std::string first_failure;
  for (auto family : {SubcellFamily::lobatto, SubcellFamily::radau}) {
    for (int d = 1; d <= 6; ++d) {
      for (double split : {-0.5, 0.0, 0.3}) {
        const double tol = d <= 3 ? 1e-13 : 1e-11;
        const auto op = make_subcell_operator(d, {-1.0, 1.0}, split, family);
        const auto [r1, r2] = existence_residuals(op);
        const bool ok = verify_subcell(op, tol).passed() && structural_check(op, tol).passed() &&
                        max_entry(r1) <= tol && max_entry(r2) <= tol;
        ++total;
        if (ok) ++passed;
        else if (first_failure.empty())
          first_failure = " first failure d=" + std::to_string(d) + " " + to_string(family);
      }
    }
  }
  return {passed == total, std::to_string(passed) + "/" + std::to_string(total) + " operators" + first_failure};
}

// Compares one variable of a convergence sweep against published errors and
// orders; `orders` holds the entries for N = 20, 40, 80.
bool compare_table(const ConvergenceResult& res, std::size_t var, const std::vector<double>& errors,
                   const std::vector<double>& orders, double eoc_tol, std::ostringstream& out) {
  bool ok = true;
  std::size_t k = 0;
  for (const auto& row : res.rows) {
    if (row.var != var) continue;
    const double ratio = row.l2 / errors[k];
    ok = ok && ratio <= 3.0 && ratio >= 1.0 / 3.0;
    if (k > 0) ok = ok && row.eoc && std::abs(*row.eoc - orders[k - 1]) <= eoc_tol;
    out << " N=" << row.n << ":" << fmt("%.2e", row.l2);
    if (k > 0 && row.eoc) out << "(" << fmt("%.2f", *row.eoc) << ")";
    ++k;
  }
  return ok && k == errors.size();
}

Outcome table1() {
  auto cfg = preset("advection-table1");
  std::ostringstream out;
  bool ok = true;
  cfg.degree = 3;
  out << "d=3";
  ok = compare_table(run_convergence(cfg), 0, {2.05e-5, 1.28e-6, 8.01e-8, 5.01e-9}, {4.00, 4.00, 4.00},
                     0.15, out) && ok;
  cfg.degree = 4;
  out << "; d=4";
  ok = compare_table(run_convergence(cfg), 0, {3.40e-7, 1.09e-8, 3.43e-10, 1.09e-11}, {4.97, 4.98, 4.98},
                     0.15, out) && ok;
  return {ok, out.str()};
}

Outcome table2() {
  auto cfg = preset("euler-table2");
  std::ostringstream out;
  bool ok = true;
  cfg.degree = 3;
  out << "rho d=3";
  ok = compare_table(run_convergence(cfg), 0, {5.43e-6, 3.93e-7, 2.13e-8, 1.23e-9}, {3.79, 4.21, 4.12},
                     0.3, out) && ok;
  cfg.degree = 4;
  out << "; rho d=4";
  ok = compare_table(run_convergence(cfg), 0, {2.09e-7, 7.42e-9, 1.52e-10, 4.72e-12}, {4.82, 5.61, 5.01},
                     0.3, out) && ok;
  return {ok, out.str()};
}

// Runs shared by several criteria.
struct Runs {
  RunResult advection, maxwell, burgers, long_subcell, long_baseline;
};

Runs& runs() {
  static Runs r = [] {
    Runs x;
    x.advection = run_simulation(preset("advection-fig6"));
    x.maxwell = run_simulation(preset("maxwell-fig6"));
    x.burgers = run_simulation(preset("burgers-fig6"));
    x.long_subcell = run_simulation(preset("advection-fig4"));
    x.long_baseline = run_simulation(preset("advection-fig4-baseline"));
    return x;
  }();
  return r;
}

Outcome conservation() {
  auto& r = runs();
  double worst = 0.0;
  bool ok = true;
  std::ostringstream out;
  for (const auto* run : {&r.advection, &r.maxwell, &r.burgers}) {
    ok = ok && !run->failure;
    worst = std::max(worst, run->max_integral_drift());
  }
  out << "max |I(t) - I(0)| advection " << fmt("%.2e", r.advection.max_integral_drift()) << ", maxwell "
      << fmt("%.2e", r.maxwell.max_integral_drift()) << ", burgers " << fmt("%.2e", r.burgers.max_integral_drift());
  return {ok && worst <= 1e-11, out.str()};
}

Outcome energy() {
  auto& r = runs();
  const double rate = std::max(r.advection.max_energy_rate(), r.long_subcell.max_energy_rate());

  // Single-block overset problem with inflow data g at x = a:
  //   dE/dt = alpha [g^2 - v_d^2] - alpha [g - u_a]^2 - alpha [u_bL - v_b]^2.
  const OversetDomain dom;
  const double alpha = 1.7;
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int d = 2 + trial % 4;
    const auto family = trial % 2 ? SubcellFamily::radau : SubcellFamily::lobatto;
    const auto op_u = make_subcell_operator(d, dom.u_interval(), dom.b, family);
    const ElementOperator op_v = gauss_lobatto_operator(d, dom.v_interval());
    const double g = dist(rng);
    SolverConfig cfg;
    cfg.law = std::make_shared<Advection>(alpha);
    cfg.periodic = false;
    cfg.left_boundary = [g](double) { return State{g, 0, 0}; };
    cfg.right_boundary = [](double) { return State{0, 0, 0}; };
    const Semidiscretization sd(single_block_mesh(dom, op_u, op_v), cfg);
    Vector w(static_cast<Eigen::Index>(sd.size()));
    for (auto& x : w) x = dist(rng);
    const auto at = [&](const Projection& p) {
      return p.weights.dot(w.segment(static_cast<Eigen::Index>(p.offset), p.weights.size()));
    };
    const auto& m = sd.mesh();
    const double u_a = at(m.u_a), u_bl = at(m.u_bL), v_b = at(m.v_b), v_d = at(m.v_d);
    const double identity = alpha * (g * g - v_d * v_d) - alpha * (g - u_a) * (g - u_a) -
                            alpha * (u_bl - v_b) * (u_bl - v_b);
    worst = std::max(worst, std::abs(energy_rate(sd, 0.0, w) - identity));
  }
  return {rate <= 1e-10 && worst <= 1e-11,
          "max dE/dt " + fmt("%.2e", rate) + ", identity residual " + fmt("%.2e", worst) + " over 100 states"};
}

Outcome spectra() {
  const auto sub = compute_spectrum(preset("spectra-fig5"));
  const auto base = compute_spectrum(preset("spectra-fig5-baseline"));
  return {sub.abscissa <= 1e-10 && base.abscissa > 0.0,
          "abscissa sub-cell " + fmt("%.2e", sub.abscissa) + ", baseline " + fmt("%.2e", base.abscissa)};
}

Outcome fully_upwind() {
  auto cfg = preset("burgers-fig6");
  cfg.subcell_flux = FluxKind::godunov;
  const auto godunov = build_problem(cfg);
  cfg.subcell_flux = FluxKind::rusanov;
  const auto rusanov = build_problem(cfg);
  std::mt19937 rng(99);
  std::uniform_real_distribution<double> dist(0.5, 3.0);
  double worst_godunov = 0.0, least_rusanov = INFINITY;
  for (int trial = 0; trial < 20; ++trial) {
    Vector w(static_cast<Eigen::Index>(godunov.sd->size()));
    for (auto& x : w) x = dist(rng);
    worst_godunov = std::max(worst_godunov, std::abs(conservation_residual(*godunov.sd, 0.0, w)[0]));
    least_rusanov = std::min(least_rusanov, std::abs(conservation_residual(*rusanov.sd, 0.0, w)[0]));
  }
  return {least_rusanov >= 1e-6 && worst_godunov <= 1e-11,
          "conservation residual rusanov min " + fmt("%.2e", least_rusanov) + ", godunov max " +
              fmt("%.2e", worst_godunov)};
}

Outcome flux_comparison() {
  const auto cmp = compare_fluxes(preset("flux-compare-fig8"));
  const auto& hll = cmp.first_run;
  const auto& rus = cmp.second_run;
  if (hll.failure || rus.failure) return {false, "run failed"};
  const double hd = hll.max_integral_drift(), rd = rus.max_integral_drift();
  const double hs = hll.max_entropy_rate().value_or(INFINITY);
  const double rs = rus.max_entropy_rate().value_or(-INFINITY);
  return {hd <= 1e-11 && rd >= 100.0 * hd && rs > 0.0 && hs <= 1e-10,
          "drift hll " + fmt("%.2e", hd) + ", rusanov " + fmt("%.2e", rd) + "; max dS/dt hll " + fmt("%.2e", hs) +
              ", rusanov " + fmt("%.2e", rs)};
}

Outcome long_time() {
  auto& r = runs();
  const auto growth = [](const RunResult& run) { return run.peak_max_norm() / run.initial_max_norm(); };
  const double gs = growth(r.long_subcell), gb = growth(r.long_baseline);
  return {!r.long_subcell.failure && gs <= 2.0 && gb > 5.0,
          "max-norm growth to t=200 sub-cell " + fmt("%.4f", gs) + ", baseline " + fmt("%.4f", gb) +
              (r.long_baseline.failure ? " (baseline blew up: " + *r.long_baseline.failure + ")" : "")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;  // 0: no runtime bound
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"golden d=1 operators", 1, golden},
      {"axiom suite d=1..6", 10, axioms},
      {"advection convergence table", 120, table1},
      {"euler convergence table", 300, table2},
      {"conservation", 0, conservation},
      {"energy stability", 0, energy},
      {"jacobian spectra", 30, spectra},
      {"fully upwind coupling", 0, fully_upwind},
      {"euler coupling flux comparison", 0, flux_comparison},
      {"long-time stability", 0, long_time},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_s > 0 && secs > c.budget_s) {
      o.passed = false;
      o.detail += " [over " + fmt("%.0f", c.budget_s) + " s budget]";
    }
    if (!o.passed) ++failures;
    std::printf("%s [%zu] %s: %s (%.2f s)\n", o.passed ? "PASS" : "FAIL", i + 1, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
