#include "subcell/semidiscretization.hpp"

#include "subcell/kernels.hpp"

#include <cmath>

namespace subcell {

namespace {

bool never_fully_upwind(FluxKind kind) {
  return kind == FluxKind::rusanov || kind == FluxKind::central ||
         kind == FluxKind::entropy_conservative;
}

bool near(double x, double y, double scale) { return std::abs(x - y) <= 1e-12 * scale; }

Trace owned(const Projection& p) { return {Trace::Kind::owned, p}; }
Trace foreign(const Projection& p) { return {Trace::Kind::foreign, p}; }

}  // namespace

Semidiscretization::Semidiscretization(OversetMesh mesh, SolverConfig config)
    : mesh_(std::move(mesh)), config_(std::move(config)) {
  if (!config_.law) throw Error("solver needs a conservation law");
  n_vars_ = config_.law->n_vars();
  if (!config_.periodic && (!config_.left_boundary || !config_.right_boundary))
    throw Error("non-periodic problem needs boundary data on both ends");
  if (config_.volume_flux) {
    for (const auto* side : {&mesh_.u, &mesh_.v})
      for (const auto& el : side->elements)
        if (!el.diagonal_boundary)
          throw Error("flux differencing needs diagonal-boundary (Lobatto) operators");
  }
  subcell_warning_ = !config_.law->is_linear() && never_fully_upwind(config_.subcell_flux);

  inverse_weights_.resize(static_cast<Eigen::Index>(mesh_.total_nodes()));
  x_ = mesh_.coordinates();
  for (const auto* side : {&mesh_.u, &mesh_.v}) {
    for (const auto& el : side->elements) {
      for (std::size_t i = 0; i < el.size(); ++i)
        inverse_weights_[static_cast<Eigen::Index>(el.offset + i)] =
            1.0 / el.weights[static_cast<Eigen::Index>(i)];
      std::vector<double> rows(el.size() * el.size());
      for (std::size_t r = 0; r < el.size(); ++r)
        for (std::size_t c = 0; c < el.size(); ++c)
          rows[r * el.size() + c] = el.D(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
      d_row_major_.push_back(std::move(rows));
    }
  }
  build_faces(mesh_.u, true);
  build_faces(mesh_.v, false);
}

void Semidiscretization::build_faces(const MeshSide& side, bool is_u) {
  const auto& dom = mesh_.domain;
  const double scale = dom.length();
  const double coupling_point = is_u ? dom.b : dom.c;
  const bool baseline = mesh_.coupling == CouplingMode::baseline;
  const FluxKind coupling_flux = baseline ? config_.surface_flux : config_.subcell_flux;
  const auto& els = side.elements;

  // Left end.
  Face left_end;
  if (is_u) {
    left_end.x = dom.a;
    left_end.left = config_.periodic ? foreign(mesh_.v_d) : Trace{Trace::Kind::left_boundary, {}};
    left_end.right = owned(mesh_.u_a);
    left_end.flux = config_.surface_flux;
    face_a_ = faces_.size();
  } else {
    left_end.x = dom.b;
    left_end.left = foreign(mesh_.u_bL);
    left_end.right = owned(mesh_.v_b);
    left_end.flux = coupling_flux;
    left_end.coupling = true;
  }
  faces_.push_back(left_end);

  for (std::size_t k = 0; k < els.size(); ++k) {
    const auto& el = els[k];
    if (el.is_split) {
      Face inner;
      inner.x = el.split;
      inner.left = owned({k, el.offset, el.e_mid_left});
      inner.right = owned({k, el.offset, el.e_mid_right});
      inner.flux = coupling_flux;
      inner.coupling = true;
      faces_.push_back(inner);
    }
    if (k + 1 < els.size()) {
      Face iface;
      iface.x = el.interval.right;
      iface.left = owned({k, el.offset, el.e_right});
      iface.right = owned({k + 1, els[k + 1].offset, els[k + 1].e_left});
      iface.coupling = near(iface.x, coupling_point, scale);
      iface.flux = iface.coupling ? coupling_flux : config_.surface_flux;
      faces_.push_back(iface);
    }
  }

  // Right end.
  Face right_end;
  if (is_u) {
    right_end.x = dom.c;
    right_end.left = owned(mesh_.u_c);
    right_end.right = foreign(mesh_.v_cR);
    right_end.flux = coupling_flux;
    right_end.coupling = true;
  } else {
    right_end.x = dom.d;
    right_end.left = owned(mesh_.v_d);
    right_end.right =
        config_.periodic ? foreign(mesh_.u_a) : Trace{Trace::Kind::right_boundary, {}};
    right_end.flux = config_.surface_flux;
    face_d_ = faces_.size();
  }
  faces_.push_back(right_end);
}

State Semidiscretization::node_state(const Vector& w, std::size_t slot) const {
  State s{};
  for (std::size_t v = 0; v < n_vars_; ++v) s[v] = w[static_cast<Eigen::Index>(slot * n_vars_ + v)];
  return s;
}

State Semidiscretization::trace_state(double t, const Vector& w, const Trace& trace) const {
  switch (trace.kind) {
    case Trace::Kind::left_boundary: return config_.left_boundary(t);
    case Trace::Kind::right_boundary: return config_.right_boundary(t);
    default: break;
  }
  State s{};
  const auto& p = trace.projection;
  for (Eigen::Index i = 0; i < p.weights.size(); ++i) {
    const double wi = p.weights[i];
    if (wi == 0.0) continue;
    const State node = node_state(w, p.offset + static_cast<std::size_t>(i));
    for (std::size_t v = 0; v < n_vars_; ++v) s[v] += wi * node[v];
  }
  return s;
}

State Semidiscretization::face_flux(double t, const Vector& w, const Face& face) const {
  const State wl = trace_state(t, w, face.left);
  const State wr = trace_state(t, w, face.right);
  return numerical_flux(face.flux, law(), wl, wr);
}

void Semidiscretization::apply_face(double t, const Vector& w, const Face& face,
                                    Vector& dw) const {
  const State fstar = face_flux(t, w, face);
  for (const auto* trace : {&face.left, &face.right}) {
    if (trace->kind != Trace::Kind::owned) continue;
    // Left side of the face is the right end of its element: outflow sign.
    const double sign = trace == &face.left ? -1.0 : 1.0;
    const auto& p = trace->projection;
    State projected_flux{};
    for (Eigen::Index i = 0; i < p.weights.size(); ++i) {
      const double wi = p.weights[i];
      if (wi == 0.0) continue;
      const State f = law().flux(node_state(w, p.offset + static_cast<std::size_t>(i)));
      for (std::size_t v = 0; v < n_vars_; ++v) projected_flux[v] += wi * f[v];
    }
    for (Eigen::Index i = 0; i < p.weights.size(); ++i) {
      const double wi = p.weights[i];
      if (wi == 0.0) continue;
      const std::size_t slot = p.offset + static_cast<std::size_t>(i);
      const double scale = sign * wi * inverse_weights_[static_cast<Eigen::Index>(slot)];
      for (std::size_t v = 0; v < n_vars_; ++v)
        dw[static_cast<Eigen::Index>(slot * n_vars_ + v)] += scale * (fstar[v] - projected_flux[v]);
    }
  }
}

void Semidiscretization::volume_term(const Element& el, std::size_t index, const Vector& w,
                                     Vector& dw) const {
  const std::size_t n = el.size();
  const std::size_t nv = n_vars_;
  std::vector<State> states(n);
  for (std::size_t i = 0; i < n; ++i) {
    states[i] = node_state(w, el.offset + i);
    law().validate(states[i]);
  }

  if (config_.volume_flux) {
    // -sum_j 2 D_ij f*(w_i, w_j); the two-point flux is symmetric.
    std::vector<State> acc(n, State{});
    for (std::size_t i = 0; i < n; ++i) {
      const State fi = law().flux(states[i]);
      const double dii = el.D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i));
      for (std::size_t v = 0; v < nv; ++v) acc[i][v] += 2.0 * dii * fi[v];
      for (std::size_t j = i + 1; j < n; ++j) {
        const double dij = el.D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        const double dji = el.D(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
        if (dij == 0.0 && dji == 0.0) continue;
        const State fij = volume_flux(*config_.volume_flux, law(), states[i], states[j]);
        for (std::size_t v = 0; v < nv; ++v) {
          acc[i][v] += 2.0 * dij * fij[v];
          acc[j][v] += 2.0 * dji * fij[v];
        }
      }
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t v = 0; v < nv; ++v)
        dw[static_cast<Eigen::Index>((el.offset + i) * nv + v)] -= acc[i][v];
    return;
  }

  // Derivative form, one variable at a time through the matvec kernel.
  const auto& kern = kernels::active();
  const auto& rows = d_row_major_[index];
  std::vector<double> f(n), df(n);
  std::vector<State> fluxes(n);
  for (std::size_t i = 0; i < n; ++i) fluxes[i] = law().flux(states[i]);
  for (std::size_t v = 0; v < nv; ++v) {
    for (std::size_t i = 0; i < n; ++i) f[i] = fluxes[i][v];
    kern.dense_matvec(df.data(), rows.data(), f.data(), n, n);
    for (std::size_t i = 0; i < n; ++i) dw[static_cast<Eigen::Index>((el.offset + i) * nv + v)] -= df[i];
  }
}

void Semidiscretization::rhs(double t, const Vector& w, Vector& dw) const {
  if (w.size() != static_cast<Eigen::Index>(size()))
    throw Error("state has wrong size");
  dw.setZero(w.size());
  std::size_t index = 0;
  for (const auto* side : {&mesh_.u, &mesh_.v})
    for (const auto& el : side->elements) volume_term(el, index++, w, dw);
  for (const auto& face : faces_) apply_face(t, w, face, dw);
  if (config_.source) {
    for (std::size_t slot = 0; slot < x_.size(); ++slot) {
      const State s = config_.source(x_[slot], t);
      for (std::size_t v = 0; v < n_vars_; ++v) dw[static_cast<Eigen::Index>(slot * n_vars_ + v)] += s[v];
    }
  }
}

Vector Semidiscretization::rhs(double t, const Vector& w) const {
  Vector dw;
  rhs(t, w, dw);
  return dw;
}

Vector Semidiscretization::interpolate(const InitialFunction& f) const {
  Vector w(static_cast<Eigen::Index>(size()));
  for (std::size_t slot = 0; slot < x_.size(); ++slot) {
    const State s = f(x_[slot]);
    for (std::size_t v = 0; v < n_vars_; ++v) w[static_cast<Eigen::Index>(slot * n_vars_ + v)] = s[v];
  }
  return w;
}

Matrix Semidiscretization::jacobian(double t, const Vector& w) const {
  const auto n = static_cast<Eigen::Index>(size());
  Matrix jac(n, n);
  if (law().is_linear()) {
    const Vector zero = Vector::Zero(n);
    const Vector base = rhs(t, zero);
    Vector unit = Vector::Zero(n);
    for (Eigen::Index j = 0; j < n; ++j) {
      unit[j] = 1.0;
      jac.col(j) = rhs(t, unit) - base;
      unit[j] = 0.0;
    }
    return jac;
  }
  Vector probe = w;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double eps = 1e-7 * (1.0 + std::abs(w[j]));
    probe[j] = w[j] + eps;
    const Vector plus = rhs(t, probe);
    probe[j] = w[j] - eps;
    const Vector minus = rhs(t, probe);
    probe[j] = w[j];
    jac.col(j) = (plus - minus) / (2.0 * eps);
  }
  return jac;
}

}  // namespace subcell
