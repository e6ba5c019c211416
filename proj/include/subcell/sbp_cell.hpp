#pragma once

#include "subcell/common.hpp"
#include "subcell/function_space.hpp"
#include "subcell/verification.hpp"

#include <iosfwd>
#include <string>

namespace subcell {

enum class QuadratureFamily { lobatto, radau_left, radau_right };

enum class FixedEnd { left, right };

std::string to_string(QuadratureFamily family);

/// Classical diagonal-norm SBP operator D = P^{-1} Q on a single cell.
///
/// B is written through the boundary projections as
/// B = e_right e_right^T - e_left e_left^T.
struct CellOperator {
  QuadratureFamily family = QuadratureFamily::lobatto;
  int degree = 0;
  Interval cell;
  NodeSet nodes{{-1.0, 1.0}, {-1.0, 1.0}};
  Vector weights;  // diagonal of P
  Matrix Q;
  Matrix B;
  Matrix D;
  Vector e_left;
  Vector e_right;
  SpacePtr space;

  std::size_t size() const { return nodes.size(); }
  Matrix P() const { return weights.asDiagonal(); }
  /// Skew-symmetric part S = Q - B / 2.
  Matrix S() const { return Q - 0.5 * B; }
};

/// Gauss-Lobatto nodes and weights on [-1, 1] with n >= 2 points.
void gauss_lobatto_rule(int n, std::vector<double>& nodes,
                        std::vector<double>& weights);

/// Gauss-Radau rule on [-1, 1] with n >= 1 points including the chosen end.
void gauss_radau_rule(int n, FixedEnd fixed_end, std::vector<double>& nodes,
                      std::vector<double>& weights);

/// Lagrange differentiation matrix on distinct nodes (barycentric form).
Matrix lagrange_derivative_matrix(const std::vector<double>& nodes);

/// Lagrange basis polynomials on `nodes` evaluated at `x`.
Vector lagrange_basis_at(const std::vector<double>& nodes, double x);

CellOperator gauss_lobatto_operator(int degree, Interval cell);
CellOperator gauss_radau_operator(int degree, Interval cell, FixedEnd fixed_end);

/// Builds an operator from arbitrary nodes and weights on `cell` using
/// Lagrange differentiation; boundary projections use the `space`.
CellOperator cell_operator_from_rule(QuadratureFamily family, int degree,
                                     Interval cell, std::vector<double> nodes,
                                     Vector weights, SpacePtr space);

/// Checks positivity, Q + Q^T = B, D V = V' and boundary exactness.
Report verify_cell_operator(const CellOperator& op, double tol);

/// Row-major text dump with 17 significant digits.
void write_matrix(std::ostream& os, const std::string& name, const Matrix& m);
void write_operator(std::ostream& os, const CellOperator& op);

}  // namespace subcell
