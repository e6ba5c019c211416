#pragma once

#include "subcell/common.hpp"
#include "subcell/function_space.hpp"
#include "subcell/sbp_cell.hpp"
#include "subcell/verification.hpp"

#include <iosfwd>
#include <utility>
#include <vector>

namespace subcell {

/// Derivative operator on [omega_L, omega_R] that also satisfies SBP on the
/// two sub-cells [omega_L, omega_M] and [omega_M, omega_R].
///
/// Nodes are ordered [x_L; x_R]. A node shared by both sub-cells (Lobatto)
/// appears twice, once per sub-cell.
struct SubcellOperator {
  Interval cell;
  double split = 0.0;
  std::size_t n_left = 0;
  std::size_t n_right = 0;
  /// [x_L; x_R]. Not a NodeSet: the split point may appear twice.
  std::vector<double> x;
  NodeSet nodes_left{{-1.0, 0.0}, {-1.0, 0.0}};
  NodeSet nodes_right{{0.0, 1.0}, {0.0, 1.0}};

  Matrix D;
  Vector weights_left;   // diagonal of P_L, zero on right nodes
  Vector weights_right;  // diagonal of P_R, zero on left nodes
  Matrix S_left, S_right;
  Matrix B_left, B_right;

  Vector e_left;         // projection to omega_L, supported on x_L
  Vector e_mid_left;     // projection to omega_M, supported on x_L
  Vector e_mid_right;    // projection to omega_M, supported on x_R
  Vector e_right;        // projection to omega_R, supported on x_R

  SpacePtr space;
  QuadratureFamily left_family = QuadratureFamily::lobatto;
  QuadratureFamily right_family = QuadratureFamily::lobatto;
  int degree = 0;

  std::size_t size() const { return n_left + n_right; }
  Vector weights() const { return weights_left + weights_right; }
  Matrix P() const { return weights().asDiagonal(); }
  Matrix P_left() const { return weights_left.asDiagonal(); }
  Matrix P_right() const { return weights_right.asDiagonal(); }
  Matrix S() const { return S_left + S_right; }
  Matrix B() const { return B_left + B_right; }
  Matrix Q_left() const { return S_left + 0.5 * B_left; }
  Matrix Q_right() const { return S_right + 0.5 * B_right; }
  Matrix Q() const { return Q_left() + Q_right(); }

  bool is_left_node(std::size_t i) const { return i < n_left; }
};

enum class ProjectionMode { interpolation, min_norm_least_squares };

/// Projection e with e^T f(nodes) = f(point) for every basis function f.
Vector projection_vector(const FunctionSpace& space, const NodeSet& nodes,
                         double point, ProjectionMode mode);

/// Interpolation when the sub-cell holds exactly K nodes, min-norm otherwise.
ProjectionMode default_projection_mode(const FunctionSpace& space,
                                       std::size_t n_nodes);

/// Block-diagonal assembly of two abutting cell operators.
SubcellOperator assemble_subcell(const CellOperator& left,
                                 const CellOperator& right);

/// Convenience: same quadrature family on both sides (radau means a
/// left-sided rule on the left sub-cell and a right-sided rule on the right).
enum class SubcellFamily { lobatto, radau };
SubcellOperator make_subcell_operator(int degree, Interval cell, double split,
                                      SubcellFamily family);

/// Sub-cell SBP conditions: exactness (i), positive one-sided norms (ii),
/// per-half SBP (iii), boundary exactness (iv) and the assembled property (v).
Report verify_subcell(const SubcellOperator& op, double tol);

/// Residuals of the two existence equations:
///   S_L V + S_R V - P_L V' - P_R V' + B V / 2
///   P_L S_R - P_R S_L + P_L B_R / 2 - P_R B_L / 2
std::pair<Matrix, Matrix> existence_residuals(const SubcellOperator& op);

/// Zero off-diagonal blocks of S_L, S_R and one-sided projection supports.
Report structural_check(const SubcellOperator& op, double tol = 0.0);

/// Extracts the diagonal blocks as stand-alone cell operators.
std::pair<CellOperator, CellOperator> split_blocks(const SubcellOperator& op);

void write_operator(std::ostream& os, const SubcellOperator& op);

}  // namespace subcell
