#include "subcell/diagnostics.hpp"

#include "subcell/kernels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>

namespace subcell {

namespace {

// Counted weight of every slot, u-mesh first.
Vector counted_weights(const Semidiscretization& sd) {
  const auto& mesh = sd.mesh();
  Vector c(static_cast<Eigen::Index>(mesh.total_nodes()));
  c << mesh.u.counted_weights, mesh.v.counted_weights;
  return c;
}

template <typename F>
void for_counted(const Semidiscretization& sd, F&& body) {
  const Vector c = counted_weights(sd);
  for (Eigen::Index slot = 0; slot < c.size(); ++slot)
    if (c[slot] != 0.0) body(static_cast<std::size_t>(slot), c[slot]);
}

double square(double x) { return x * x; }

}  // namespace

State overset_integral(const Semidiscretization& sd, const Vector& w) {
  const auto nv = sd.n_vars();
  const Vector c = counted_weights(sd);
  const auto& kern = kernels::active();
  const std::vector<double> ones(static_cast<std::size_t>(c.size()), 1.0);
  std::vector<double> component(static_cast<std::size_t>(c.size()));
  State total{};
  for (std::size_t v = 0; v < nv; ++v) {
    for (Eigen::Index s = 0; s < c.size(); ++s)
      component[static_cast<std::size_t>(s)] = w[s * static_cast<Eigen::Index>(nv) + static_cast<Eigen::Index>(v)];
    total[v] = kern.weighted_dot(c.data(), ones.data(), component.data(), component.size());
  }
  return total;
}

double overset_energy(const Semidiscretization& sd, const Vector& w) {
  double e = 0.0;
  for_counted(sd, [&](std::size_t slot, double c) {
    e += c * sd.law().energy_density(sd.node_state(w, slot));
  });
  return e;
}

double overset_entropy(const Semidiscretization& sd, const Vector& w) {
  double s = 0.0;
  for_counted(sd, [&](std::size_t slot, double c) {
    s += c * sd.law().entropy(sd.node_state(w, slot));
  });
  return s;
}

State integral_rate(const Semidiscretization& sd, double t, const Vector& w) {
  return overset_integral(sd, sd.rhs(t, w));
}

double energy_rate(const Semidiscretization& sd, double t, const Vector& w) {
  const Vector dw = sd.rhs(t, w);
  double rate = 0.0;
  for_counted(sd, [&](std::size_t slot, double c) {
    const State grad = sd.law().energy_gradient(sd.node_state(w, slot));
    const State d = sd.node_state(dw, slot);
    for (std::size_t v = 0; v < sd.n_vars(); ++v) rate += c * grad[v] * d[v];
  });
  return rate;
}

double entropy_rate(const Semidiscretization& sd, double t, const Vector& w) {
  const Vector dw = sd.rhs(t, w);
  double rate = 0.0;
  for_counted(sd, [&](std::size_t slot, double c) {
    const State ev = sd.law().entropy_variables(sd.node_state(w, slot));
    const State d = sd.node_state(dw, slot);
    for (std::size_t v = 0; v < sd.n_vars(); ++v) rate += c * ev[v] * d[v];
  });
  return rate;
}

State conservation_residual(const Semidiscretization& sd, double t, const Vector& w) {
  State r = integral_rate(sd, t, w);
  const State fa = sd.face_flux(t, w, sd.face_at_a());
  const State fd = sd.face_flux(t, w, sd.face_at_d());
  for (std::size_t v = 0; v < sd.n_vars(); ++v) r[v] -= fa[v] - fd[v];
  return r;
}

double advection_energy_balance(const Semidiscretization& sd, double t, const Vector& w) {
  const auto* adv = dynamic_cast<const Advection*>(&sd.law());
  if (!adv) throw Error("energy balance is defined for linear advection only");
  const double alpha = adv->alpha();
  const auto& mesh = sd.mesh();
  const auto value = [&](const Projection& p) {
    return sd.trace_state(t, w, {Trace::Kind::foreign, p})[0];
  };
  const double u_a = value(mesh.u_a);
  const double u_bl = value(mesh.u_bL);
  const double v_b = value(mesh.v_b);
  const double v_d = value(mesh.v_d);
  const double g = sd.config().periodic ? v_d : sd.config().left_boundary(t)[0];

  double balance = alpha * (square(g) - square(v_d)) - alpha * square(g - u_a) -
                   alpha * square(u_bl - v_b);
  const double tol = 1e-12 * mesh.domain.length();
  for (const auto& face : sd.faces()) {
    if (face.left.kind != Trace::Kind::owned || face.right.kind != Trace::Kind::owned) continue;
    // u-mesh faces beyond b are outside the counted region.
    const bool on_u = face.left.projection.offset < mesh.v.first_slot;
    if (on_u && face.x >= mesh.domain.b - tol) continue;
    const double jump = sd.trace_state(t, w, face.left)[0] - sd.trace_state(t, w, face.right)[0];
    balance -= alpha * square(jump);
  }
  return balance;
}

SolutionError solution_error(const Semidiscretization& sd, const Vector& w,
                             const ExactSolution& exact, double t) {
  const auto x = sd.mesh().coordinates();
  const Vector c = counted_weights(sd);
  SolutionError err;
  for (std::size_t slot = 0; slot < x.size(); ++slot) {
    const State ref = exact(x[slot], t);
    const State num = sd.node_state(w, slot);
    const double weight = c[static_cast<Eigen::Index>(slot)];
    for (std::size_t v = 0; v < sd.n_vars(); ++v) {
      const double diff = std::abs(num[v] - ref[v]);
      err.l2[v] += weight * diff * diff;
      err.linf[v] = std::max(err.linf[v], diff);
    }
  }
  for (auto& e : err.l2) e = std::sqrt(e);
  return err;
}

std::vector<std::optional<double>> experimental_orders(const std::vector<double>& errors,
                                                       const std::vector<double>& resolutions) {
  if (errors.size() != resolutions.size())
    throw Error("errors and resolutions differ in length");
  std::vector<std::optional<double>> orders(errors.size());
  for (std::size_t k = 1; k < errors.size(); ++k) {
    if (errors[k] > 0.0 && errors[k - 1] > 0.0 && resolutions[k] > 0.0 &&
        resolutions[k - 1] > 0.0 && resolutions[k] != resolutions[k - 1])
      orders[k] = std::log(errors[k - 1] / errors[k]) / std::log(resolutions[k] / resolutions[k - 1]);
  }
  return orders;
}

std::vector<std::complex<double>> eigenvalues(const Matrix& jacobian) {
  Eigen::EigenSolver<Matrix> solver(jacobian, false);
  if (solver.info() != Eigen::Success) throw Error("eigenvalue computation did not converge");
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

double spectral_abscissa(const std::vector<std::complex<double>>& spectrum) {
  double a = -std::numeric_limits<double>::infinity();
  for (const auto& z : spectrum) a = std::max(a, z.real());
  return a;
}

DiagnosticsRecord sample_diagnostics(const Semidiscretization& sd, double t, const Vector& w,
                                     const State& initial_integral, const ExactSolution& exact) {
  DiagnosticsRecord r;
  r.time = t;
  r.integral = overset_integral(sd, w);
  for (std::size_t v = 0; v < sd.n_vars(); ++v)
    r.integral_change[v] = r.integral[v] - initial_integral[v];
  r.energy = overset_energy(sd, w);
  r.energy_rate = energy_rate(sd, t, w);
  if (dynamic_cast<const Euler*>(&sd.law())) {
    r.entropy = overset_entropy(sd, w);
    r.entropy_rate = entropy_rate(sd, t, w);
  }
  r.max_norm = w.size() ? w.cwiseAbs().maxCoeff() : 0.0;
  if (exact) r.error = solution_error(sd, w, exact, t);
  return r;
}

}  // namespace subcell
