#pragma once

#include "subcell/common.hpp"
#include "subcell/sbp_cell.hpp"
#include "subcell/subcell_sbp.hpp"

#include <iosfwd>
#include <optional>
#include <variant>
#include <vector>

namespace subcell {

/// Omega_u = [a, c] and Omega_v = [b, d] with a < b < c < d.
struct OversetDomain {
  double a = -1.0;
  double b = -0.1;
  double c = 0.1;
  double d = 1.0;

  OversetDomain() = default;
  OversetDomain(double a_, double b_, double c_, double d_);

  Interval u_interval() const { return {a, c}; }
  Interval v_interval() const { return {b, d}; }
  Interval overlap() const { return {b, c}; }
  double length() const { return d - a; }
};

using ElementOperator = std::variant<CellOperator, SubcellOperator>;

/// One element of either mesh with its operator and its slot range in the
/// global nodal state (slots [offset, offset + size)).
struct Element {
  Interval interval;
  ElementOperator op;
  std::size_t offset = 0;

  // Flattened operator data shared by both operator kinds.
  std::vector<double> x;
  Matrix D;
  Vector weights;
  Vector e_left;
  Vector e_right;
  bool diagonal_boundary = false;  // B is diagonal with +-1 at end nodes

  // Present only for sub-cell elements.
  bool is_split = false;
  double split = 0.0;
  std::size_t n_left = 0;
  Vector weights_left;
  Vector e_mid_left;
  Vector e_mid_right;

  std::size_t size() const { return x.size(); }
  bool is_subcell() const { return is_split; }
};

/// A projection of the global nodal state: sum_i weights[i] * w[offset + i].
struct Projection {
  std::size_t element = 0;
  std::size_t offset = 0;
  Vector weights;
};

enum class MeshSideId { u, v };

struct MeshSide {
  std::vector<Element> elements;
  std::optional<std::size_t> split_element;  // element cut at b (u) / c (v)
  /// Quadrature weights that count the overlap once: on the u-mesh only
  /// [a, b] contributes, on the v-mesh everything does. Indexed like the
  /// mesh slots, starting at this side's first slot.
  Vector counted_weights;
  std::size_t first_slot = 0;
  std::size_t n_slots = 0;
};

/// Cross-grid interpolation used by the baseline scheme.
struct Donor {
  MeshSideId side = MeshSideId::u;
  std::size_t element = 0;
  double point = 0.0;
  Projection projection;
};

enum class SplitPolicy {
  both,    // sub-cell elements at b (u-mesh) and at c (v-mesh)
  b_only,  // only the u-mesh element containing b
  none
};

enum class CouplingMode { subcell, baseline };

struct OversetMesh {
  OversetDomain domain;
  MeshSide u;
  MeshSide v;
  CouplingMode coupling = CouplingMode::subcell;
  int degree = 0;

  // Interface projections. The one-sided ones are restricted: b_L is
  // supported on nodes <= b, b_R on nodes >= b; likewise c_L, c_R.
  Projection u_a, u_bL, u_bR, u_c;
  Projection v_b, v_cL, v_cR, v_d;

  // Baseline donors: u interpolated at b, v interpolated at c.
  std::optional<Donor> donor_b;
  std::optional<Donor> donor_c;

  std::size_t total_nodes() const { return u.n_slots + v.n_slots; }
  /// Physical coordinate of every slot, u-mesh first.
  std::vector<double> coordinates() const;
  const MeshSide& side(MeshSideId id) const { return id == MeshSideId::u ? u : v; }
};

/// Uniform partitions of [a, c] and [b, d]; the element containing b (u-mesh)
/// and c (v-mesh) carries a sub-cell operator split exactly there.
OversetMesh build_overset_mesh(const OversetDomain& domain, int n_u, int n_v,
                               int degree, SubcellFamily family,
                               SplitPolicy policy = SplitPolicy::both);

/// Plain Gauss-Lobatto elements everywhere, coupled by interpolation.
OversetMesh baseline_overset_mesh(const OversetDomain& domain, int n_u, int n_v,
                                  int degree);

/// Single-block mesh: one element per domain with the given operators.
OversetMesh single_block_mesh(const OversetDomain& domain,
                              const SubcellOperator& op_u,
                              const ElementOperator& op_v);

/// Checks partition, split location, projection exactness and supports.
Report verify_mesh(const OversetMesh& mesh, double tol = 1e-12);

void print_mesh_summary(std::ostream& os, const OversetMesh& mesh);

/// Index of the element of `elements` whose closed interval contains x
/// (left element on ties).
std::size_t locate_element(const std::vector<Element>& elements, double x);

}  // namespace subcell
