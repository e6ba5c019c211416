#pragma once

#include "subcell/common.hpp"
#include "subcell/equations.hpp"
#include "subcell/overset_mesh.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace subcell {

using SourceFunction = std::function<State(double x, double t)>;
using BoundaryFunction = std::function<State(double t)>;
using InitialFunction = std::function<State(double x)>;

struct SolverConfig {
  std::shared_ptr<const ConservationLaw> law;
  /// Flux at element interfaces and physical boundaries.
  FluxKind surface_flux = FluxKind::upwind;
  /// Flux at the overset coupling points b and c.
  FluxKind subcell_flux = FluxKind::upwind;
  /// Two-point flux for flux differencing; nullopt selects the plain
  /// derivative form -D f.
  std::optional<FluxKind> volume_flux;
  bool periodic = true;
  BoundaryFunction left_boundary;   // g_L(t), used when not periodic
  BoundaryFunction right_boundary;  // g_R(t)
  SourceFunction source;            // optional
};

/// Which state a face side reads and whether it receives a penalty.
struct Trace {
  enum class Kind { owned, foreign, left_boundary, right_boundary };
  Kind kind = Kind::owned;
  Projection projection;
};

/// Point where a numerical flux is evaluated. Owned traces receive the SAT
/// e (f* - e^T f) with the sign of an outflow (left side) or inflow (right
/// side) end.
struct Face {
  double x = 0.0;
  Trace left;
  Trace right;
  FluxKind flux = FluxKind::upwind;
  bool coupling = false;  // evaluated with the sub-cell-point flux
};

/// SBP-SAT semi-discretisation dw/dt = rhs(t, w) of an overset mesh. The
/// state stores, for each mesh slot (u-mesh first), all conserved variables
/// consecutively.
class Semidiscretization {
 public:
  Semidiscretization(OversetMesh mesh, SolverConfig config);

  const OversetMesh& mesh() const { return mesh_; }
  const SolverConfig& config() const { return config_; }
  const ConservationLaw& law() const { return *config_.law; }
  std::size_t n_vars() const { return n_vars_; }
  std::size_t size() const { return mesh_.total_nodes() * n_vars_; }
  const std::vector<Face>& faces() const { return faces_; }

  /// Set when the law is nonlinear and the coupling flux is never fully
  /// upwind; conservation is then not expected.
  bool subcell_warning() const { return subcell_warning_; }

  void rhs(double t, const Vector& w, Vector& dw) const;
  Vector rhs(double t, const Vector& w) const;

  /// Nodal values of a function of x.
  Vector interpolate(const InitialFunction& f) const;

  State node_state(const Vector& w, std::size_t slot) const;
  State trace_state(double t, const Vector& w, const Trace& trace) const;
  State face_flux(double t, const Vector& w, const Face& face) const;

  /// Faces at x = a (left end of the u-mesh) and x = d (right end of v).
  const Face& face_at_a() const { return faces_[face_a_]; }
  const Face& face_at_d() const { return faces_[face_d_]; }

  /// Exact column assembly for linear laws, central differences otherwise.
  Matrix jacobian(double t, const Vector& w) const;

 private:
  void build_faces(const MeshSide& side, bool is_u);
  void volume_term(const Element& el, std::size_t index, const Vector& w, Vector& dw) const;
  void apply_face(double t, const Vector& w, const Face& face, Vector& dw) const;

  OversetMesh mesh_;
  SolverConfig config_;
  std::size_t n_vars_ = 1;
  bool subcell_warning_ = false;
  std::vector<Face> faces_;
  std::size_t face_a_ = 0;
  std::size_t face_d_ = 0;
  // Row-major copies of each element's D, u-mesh elements first.
  std::vector<std::vector<double>> d_row_major_;
  Vector inverse_weights_;  // per slot
  std::vector<double> x_;   // per slot
};

}  // namespace subcell
