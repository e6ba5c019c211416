#include "subcell/sbp_cell.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace subcell {

namespace {

/// Zeros of the Jacobi polynomial P^(alpha, beta)_m from the eigenvalues of
/// its symmetric tridiagonal Jacobi matrix.
std::vector<double> jacobi_zeros(int m, double alpha, double beta) {
  if (m <= 0) return {};
  Matrix J = Matrix::Zero(m, m);
  const double ab = alpha + beta;
  for (int k = 0; k < m; ++k) {
    const double two_k_ab = 2.0 * k + ab;
    J(k, k) = (k == 0) ? (beta - alpha) / (ab + 2.0)
                       : (beta * beta - alpha * alpha) / (two_k_ab * (two_k_ab + 2.0));
    if (k + 1 < m) {
      const double j = k + 1.0;
      const double t = 2.0 * j + ab;
      const double off = 2.0 / t *
                         std::sqrt(j * (j + alpha) * (j + beta) * (j + ab) /
                                   ((t - 1.0) * (t + 1.0)));
      J(k, k + 1) = off;
      J(k + 1, k) = off;
    }
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(J, Eigen::EigenvaluesOnly);
  std::vector<double> zeros(solver.eigenvalues().data(),
                            solver.eigenvalues().data() + m);
  std::sort(zeros.begin(), zeros.end());
  return zeros;
}

template <class F>
double newton_polish(double x, F&& g_and_derivative) {
  for (int it = 0; it < 50; ++it) {
    const auto [g, dg] = g_and_derivative(x);
    const double step = g / dg;
    x -= step;
    if (std::abs(step) <= 1e-14 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

std::string to_string(QuadratureFamily family) {
  switch (family) {
    case QuadratureFamily::lobatto: return "lobatto";
    case QuadratureFamily::radau_left: return "radau-left";
    case QuadratureFamily::radau_right: return "radau-right";
  }
  return "unknown";
}

void gauss_lobatto_rule(int n, std::vector<double>& nodes,
                        std::vector<double>& weights) {
  if (n < 2) throw Error("Gauss-Lobatto rule needs at least 2 points");
  const int m = n - 1;  // interior nodes are the zeros of P'_m
  auto interior = jacobi_zeros(n - 2, 1.0, 1.0);
  nodes.assign(static_cast<std::size_t>(n), 0.0);
  nodes.front() = -1.0;
  nodes.back() = 1.0;
  for (int i = 0; i < n - 2; ++i) {
    nodes[i + 1] = newton_polish(interior[i], [m](double x) {
      const auto p = legendre(m, x);
      const double d2 = (2.0 * x * p.derivative - m * (m + 1.0) * p.value) / (1.0 - x * x);
      return std::pair{p.derivative, d2};
    });
  }
  // Symmetrize to remove rounding asymmetry.
  for (int i = 0; i < n / 2; ++i) {
    const double s = 0.5 * (nodes[n - 1 - i] - nodes[i]);
    nodes[i] = -s;
    nodes[n - 1 - i] = s;
  }
  if (n % 2 == 1) nodes[n / 2] = 0.0;
  weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double p = legendre(m, nodes[i]).value;
    weights[i] = 2.0 / (n * (n - 1.0) * p * p);
  }
}

void gauss_radau_rule(int n, FixedEnd fixed_end, std::vector<double>& nodes,
                      std::vector<double>& weights) {
  if (n < 1) throw Error("Gauss-Radau rule needs at least 1 point");
  // Left-sided rule: x = -1 plus the zeros of P^(0,1)_{n-1}, which are the
  // remaining zeros of P_{n-1} + P_n.
  auto interior = jacobi_zeros(n - 1, 0.0, 1.0);
  std::vector<double> x(static_cast<std::size_t>(n));
  x[0] = -1.0;
  for (int i = 0; i < n - 1; ++i) {
    x[i + 1] = newton_polish(interior[i], [n](double t) {
      const auto a = legendre(n - 1, t);
      const auto b = legendre(n, t);
      return std::pair{a.value + b.value, a.derivative + b.derivative};
    });
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  const double n2 = static_cast<double>(n) * n;
  w[0] = 2.0 / n2;
  for (int i = 1; i < n; ++i) {
    const double p = legendre(n - 1, x[i]).value;
    w[i] = (1.0 - x[i]) / (n2 * p * p);
  }
  if (fixed_end == FixedEnd::right) {
    std::reverse(x.begin(), x.end());
    std::reverse(w.begin(), w.end());
    for (double& xi : x) xi = -xi;
  }
  nodes = std::move(x);
  weights = std::move(w);
}

Matrix lagrange_derivative_matrix(const std::vector<double>& nodes) {
  const std::size_t n = nodes.size();
  std::vector<double> bary(n, 1.0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) bary[j] /= (nodes[j] - nodes[k]);
  Matrix D = Matrix::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    double diag = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      D(i, j) = (bary[j] / bary[i]) / (nodes[i] - nodes[j]);
      diag -= D(i, j);
    }
    D(i, i) = diag;
  }
  return D;
}

Vector lagrange_basis_at(const std::vector<double>& nodes, double x) {
  const std::size_t n = nodes.size();
  Vector ell = Vector::Zero(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (x == nodes[j]) {
      ell[j] = 1.0;
      return ell;
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    double value = 1.0;
    for (std::size_t k = 0; k < n; ++k)
      if (k != j) value *= (x - nodes[k]) / (nodes[j] - nodes[k]);
    ell[j] = value;
  }
  return ell;
}

CellOperator cell_operator_from_rule(QuadratureFamily family, int degree,
                                     Interval cell, std::vector<double> nodes,
                                     Vector weights, SpacePtr space) {
  CellOperator op;
  op.family = family;
  op.degree = degree;
  op.cell = cell;
  op.space = std::move(space);
  op.D = lagrange_derivative_matrix(nodes);
  op.weights = std::move(weights);
  op.e_left = lagrange_basis_at(nodes, cell.left);
  op.e_right = lagrange_basis_at(nodes, cell.right);
  op.nodes = NodeSet(std::move(nodes), cell);
  op.B = op.e_right * op.e_right.transpose() - op.e_left * op.e_left.transpose();
  op.Q = op.weights.asDiagonal() * op.D;
  return op;
}

namespace {

CellOperator operator_from_reference(QuadratureFamily family, int degree,
                                     Interval cell, const std::vector<double>& ref_nodes,
                                     const std::vector<double>& ref_weights) {
  if (!(cell.length() > 0.0)) throw Error("cell must have positive length");
  const std::size_t n = ref_nodes.size();
  const double half = 0.5 * cell.length();
  const double mid = cell.midpoint();
  std::vector<double> x(n);
  Vector w(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = mid + half * ref_nodes[i];
    w[i] = half * ref_weights[i];
  }
  if (ref_nodes.front() == -1.0) x.front() = cell.left;
  if (ref_nodes.back() == 1.0) x.back() = cell.right;

  CellOperator op;
  op.family = family;
  op.degree = degree;
  op.cell = cell;
  op.space = polynomial_space(degree, cell);
  // Differentiate on the reference cell and scale, so the operator on any
  // cell is the reference operator up to the affine factor.
  op.D = lagrange_derivative_matrix(ref_nodes) * (1.0 / half);
  op.weights = w;
  op.e_left = lagrange_basis_at(x, cell.left);
  op.e_right = lagrange_basis_at(x, cell.right);
  op.nodes = NodeSet(std::move(x), cell);
  op.B = op.e_right * op.e_right.transpose() - op.e_left * op.e_left.transpose();
  op.Q = op.weights.asDiagonal() * op.D;
  return op;
}

}  // namespace

CellOperator gauss_lobatto_operator(int degree, Interval cell) {
  if (degree < 1) throw Error("Gauss-Lobatto operator needs degree >= 1 (no 1-point Lobatto rule)");
  std::vector<double> nodes, weights;
  gauss_lobatto_rule(degree + 1, nodes, weights);
  return operator_from_reference(QuadratureFamily::lobatto, degree, cell, nodes, weights);
}

CellOperator gauss_radau_operator(int degree, Interval cell, FixedEnd fixed_end) {
  if (degree < 1) throw Error("Gauss-Radau operator needs degree >= 1");
  if (fixed_end != FixedEnd::left && fixed_end != FixedEnd::right)
    throw Error("invalid fixed end for Gauss-Radau operator");
  std::vector<double> nodes, weights;
  gauss_radau_rule(degree + 1, fixed_end, nodes, weights);
  const auto family = fixed_end == FixedEnd::left ? QuadratureFamily::radau_left
                                                  : QuadratureFamily::radau_right;
  return operator_from_reference(family, degree, cell, nodes, weights);
}

Report verify_cell_operator(const CellOperator& op, double tol) {
  Report report("cell operator " + to_string(op.family) + " d=" +
                std::to_string(op.degree));
  const std::size_t n = op.size();
  const bool shapes_ok = op.weights.size() == static_cast<Eigen::Index>(n) &&
                         op.D.rows() == static_cast<Eigen::Index>(n) &&
                         op.Q.rows() == static_cast<Eigen::Index>(n) &&
                         op.B.rows() == static_cast<Eigen::Index>(n);
  report.require("shapes", shapes_ok);
  if (!shapes_ok || !op.space) return report;

  report.require("positive weights", op.weights.minCoeff() > 0.0,
                 "min weight " + std::to_string(op.weights.minCoeff()));

  const double b_scale = std::max(1.0, op.B.cwiseAbs().maxCoeff());
  report.check("Q + Q^T = B",
               (op.Q + op.Q.transpose() - op.B).cwiseAbs().maxCoeff() / b_scale, tol);
  report.check("Q = P D",
               (op.Q - op.weights.asDiagonal() * op.D).cwiseAbs().maxCoeff() /
                   std::max(1.0, op.Q.cwiseAbs().maxCoeff()),
               tol);

  const Matrix V = vandermonde(*op.space, op.nodes);
  const Matrix dV = vandermonde_derivative(*op.space, op.nodes);
  report.check("D V = V'",
               (op.D * V - dV).cwiseAbs().maxCoeff() /
                   std::max(1.0, dV.cwiseAbs().maxCoeff()),
               tol);

  const Vector fl = op.space->evaluate(op.cell.left);
  const Vector fr = op.space->evaluate(op.cell.right);
  const Matrix exact = fr * fr.transpose() - fl * fl.transpose();
  report.check("f^T B g = fg|",
               (V.transpose() * op.B * V - exact).cwiseAbs().maxCoeff() /
                   std::max(1.0, exact.cwiseAbs().maxCoeff()),
               tol);
  return report;
}

void write_matrix(std::ostream& os, const std::string& name, const Matrix& m) {
  os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
  os << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
  os << std::defaultfloat;
}

void write_operator(std::ostream& os, const CellOperator& op) {
  os << "# cell operator " << to_string(op.family) << " degree " << op.degree
     << " cell [" << std::setprecision(17) << op.cell.left << ", " << op.cell.right
     << "]\n";
  Matrix x(1, static_cast<Eigen::Index>(op.size()));
  for (std::size_t i = 0; i < op.size(); ++i) x(0, i) = op.nodes[i];
  write_matrix(os, "x", x);
  write_matrix(os, "P", op.P());
  write_matrix(os, "Q", op.Q);
  write_matrix(os, "B", op.B);
  write_matrix(os, "D", op.D);
}

}  // namespace subcell
