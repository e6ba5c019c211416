#include "subcell/subcell_sbp.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

namespace subcell {

namespace {

Matrix block_diagonal(const Matrix& a, const Matrix& b) {
  Matrix m = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  m.topLeftCorner(a.rows(), a.cols()) = a;
  m.bottomRightCorner(b.rows(), b.cols()) = b;
  return m;
}

Vector stack(const Vector& top, const Vector& bottom) {
  Vector v(top.size() + bottom.size());
  v << top, bottom;
  return v;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

double relative(const Matrix& residual, const Matrix& reference) {
  return max_abs(residual) / std::max(1.0, max_abs(reference));
}

}  // namespace

ProjectionMode default_projection_mode(const FunctionSpace& space,
                                       std::size_t n_nodes) {
  return n_nodes == space.dimension() ? ProjectionMode::interpolation
                                      : ProjectionMode::min_norm_least_squares;
}

Vector projection_vector(const FunctionSpace& space, const NodeSet& nodes,
                         double point, ProjectionMode mode) {
  const std::size_t n = nodes.size();
  const std::size_t k = space.dimension();
  if (mode == ProjectionMode::interpolation && n != k)
    throw Error("interpolation projection needs exactly K = " + std::to_string(k) +
                " nodes, got " + std::to_string(n));
  if (n < k) throw Error("space not unisolvent on nodes (fewer nodes than dimension)");

  const Matrix V = vandermonde(space, nodes);
  Eigen::JacobiSVD<Matrix> svd(V, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& sigma = svd.singularValues();
  if (sigma.size() < static_cast<Eigen::Index>(k) ||
      sigma[static_cast<Eigen::Index>(k) - 1] <= 1e-12 * sigma[0])
    throw Error("space not unisolvent on nodes");

  if (mode == ProjectionMode::interpolation) {
    // The solution is unique; at a node it is the corresponding unit vector.
    for (std::size_t i = 0; i < n; ++i) {
      if (nodes[i] == point) {
        Vector e = Vector::Zero(n);
        e[i] = 1.0;
        return e;
      }
    }
  }
  // V^T e = f(point); minimal-norm solution e = U diag(1/sigma) W^T f.
  const Vector f = space.evaluate(point);
  const Vector coeffs = svd.matrixV().transpose() * f;
  return svd.matrixU() * coeffs.cwiseQuotient(sigma);
}

SubcellOperator assemble_subcell(const CellOperator& left, const CellOperator& right) {
  const double scale = std::max({1.0, std::abs(left.cell.left), std::abs(right.cell.right)});
  if (std::abs(left.cell.right - right.cell.left) > 1e-12 * scale)
    throw Error("sub-cells do not abut");
  if (!left.space || !right.space || !left.space->same_span(*right.space))
    throw Error("sub-cell operators have different exactness spaces");

  SubcellOperator op;
  op.cell = {left.cell.left, right.cell.right};
  op.split = left.cell.right;
  op.n_left = left.size();
  op.n_right = right.size();
  op.degree = left.degree;
  op.left_family = left.family;
  op.right_family = right.family;
  op.space = left.space->span_key() == "P_" + std::to_string(left.degree)
                            ? polynomial_space(left.degree, op.cell)
                            : left.space;
  op.nodes_left = left.nodes;
  op.nodes_right = right.nodes;
  op.x = left.nodes.values();
  op.x.insert(op.x.end(), right.nodes.values().begin(), right.nodes.values().end());

  const Matrix zl = Matrix::Zero(left.size(), left.size());
  const Matrix zr = Matrix::Zero(right.size(), right.size());
  const Vector vl = Vector::Zero(left.size());
  const Vector vr = Vector::Zero(right.size());

  op.D = block_diagonal(left.D, right.D);
  op.weights_left = stack(left.weights, vr);
  op.weights_right = stack(vl, right.weights);
  op.S_left = block_diagonal(left.S(), zr);
  op.S_right = block_diagonal(zl, right.S());
  op.B_left = block_diagonal(left.B, zr);
  op.B_right = block_diagonal(zl, right.B);

  const auto& space = *op.space;
  op.e_left = stack(projection_vector(space, left.nodes, op.cell.left,
                                      default_projection_mode(space, left.size())),
                    vr);
  op.e_mid_left = stack(projection_vector(space, left.nodes, op.split,
                                          default_projection_mode(space, left.size())),
                        vr);
  op.e_mid_right = stack(vl, projection_vector(space, right.nodes, op.split,
                                               default_projection_mode(space, right.size())));
  op.e_right = stack(vl, projection_vector(space, right.nodes, op.cell.right,
                                           default_projection_mode(space, right.size())));
  return op;
}

SubcellOperator make_subcell_operator(int degree, Interval cell, double split,
                                      SubcellFamily family) {
  if (!(cell.left < split && split < cell.right))
    throw Error("split point must lie strictly inside the cell");
  const Interval left{cell.left, split};
  const Interval right{split, cell.right};
  if (family == SubcellFamily::lobatto)
    return assemble_subcell(gauss_lobatto_operator(degree, left),
                            gauss_lobatto_operator(degree, right));
  return assemble_subcell(gauss_radau_operator(degree, left, FixedEnd::left),
                          gauss_radau_operator(degree, right, FixedEnd::right));
}

Report verify_subcell(const SubcellOperator& op, double tol) {
  Report report("sub-cell operator d=" + std::to_string(op.degree) + " split=" +
                std::to_string(op.split));
  const std::size_t n = op.size();
  report.require("shapes", op.x.size() == n && op.D.rows() == static_cast<Eigen::Index>(n) &&
                               op.weights_left.size() == static_cast<Eigen::Index>(n));
  if (!report.passed() || !op.space) return report;

  const Matrix V = vandermonde(*op.space, op.x);
  const Matrix dV = vandermonde_derivative(*op.space, op.x);

  // (i) exactness
  report.check("(i) D V = V'", relative(op.D * V - dV, dV), tol);

  // (ii) sub-cell norms
  bool support_ok = true;
  std::string detail;
  for (std::size_t i = 0; i < n; ++i) {
    const bool in_left = op.is_left_node(i);
    const double pl = op.weights_left[i];
    const double pr = op.weights_right[i];
    const bool ok = in_left ? (pl > 0.0 && pr == 0.0) : (pr > 0.0 && pl == 0.0);
    if (!ok && support_ok) {
      support_ok = false;
      detail = "index " + std::to_string(i);
    }
  }
  report.require("(ii) P_L, P_R positive on own sub-cell", support_ok, detail);

  // (iii) P_{L/R} D = S_{L/R} + B_{L/R} / 2 with skew S
  const Matrix PL = op.P_left();
  const Matrix PR = op.P_right();
  const double q_scale = std::max({1.0, max_abs(op.Q()), max_abs(op.B())});
  report.check("(iii) P_L D = Q_L", max_abs(PL * op.D - op.Q_left()) / q_scale, tol);
  report.check("(iii) P_R D = Q_R", max_abs(PR * op.D - op.Q_right()) / q_scale, tol);
  report.check("(iii) S_L skew", max_abs(op.S_left + op.S_left.transpose()) / q_scale, tol);
  report.check("(iii) S_R skew", max_abs(op.S_right + op.S_right.transpose()) / q_scale, tol);
  report.check("(iii) B_L symmetric", max_abs(op.B_left - op.B_left.transpose()) / q_scale, tol);
  report.check("(iii) B_R symmetric", max_abs(op.B_right - op.B_right.transpose()) / q_scale, tol);

  // Sub-cell SBP identity f^T P (D g) + (D f)^T P g = f^T B g on the basis.
  const Matrix DV = op.D * V;
  const Matrix sbp_l = V.transpose() * PL * DV + DV.transpose() * PL * V - V.transpose() * op.B_left * V;
  const Matrix sbp_r = V.transpose() * PR * DV + DV.transpose() * PR * V - V.transpose() * op.B_right * V;
  const double basis_scale = std::max(1.0, max_abs(V.transpose() * V));
  report.check("SBP identity on Omega_L", max_abs(sbp_l) / (q_scale * basis_scale), tol);
  report.check("SBP identity on Omega_R", max_abs(sbp_r) / (q_scale * basis_scale), tol);

  // (iv) boundary exactness
  const Vector fl = op.space->evaluate(op.cell.left);
  const Vector fm = op.space->evaluate(op.split);
  const Vector fr = op.space->evaluate(op.cell.right);
  const Matrix exact_l = fm * fm.transpose() - fl * fl.transpose();
  const Matrix exact_r = fr * fr.transpose() - fm * fm.transpose();
  report.check("(iv) f^T B_L g = fg|_L", relative(V.transpose() * op.B_left * V - exact_l, exact_l), tol);
  report.check("(iv) f^T B_R g = fg|_R", relative(V.transpose() * op.B_right * V - exact_r, exact_r), tol);

  // (v) whole-cell SBP from the sums
  const Matrix P = op.P();
  const Matrix Q = op.Q();
  report.check("(v) P D = Q", max_abs(P * op.D - Q) / q_scale, tol);
  report.check("(v) Q + Q^T = B", max_abs(Q + Q.transpose() - op.B()) / q_scale, tol);
  report.require("(v) P = P_L + P_R", (op.weights_left.cwiseProduct(op.weights_right)).isZero(0.0));
  return report;
}

std::pair<Matrix, Matrix> existence_residuals(const SubcellOperator& op) {
  const Matrix V = vandermonde(*op.space, op.x);
  const Matrix dV = vandermonde_derivative(*op.space, op.x);
  const Matrix PL = op.P_left();
  const Matrix PR = op.P_right();
  Matrix first = op.S_left * V + op.S_right * V - PL * dV - PR * dV + 0.5 * op.B() * V;
  Matrix second = PL * op.S_right - PR * op.S_left + 0.5 * PL * op.B_right - 0.5 * PR * op.B_left;
  return {std::move(first), std::move(second)};
}

Report structural_check(const SubcellOperator& op, double tol) {
  Report report("structure d=" + std::to_string(op.degree));
  const auto nl = static_cast<Eigen::Index>(op.n_left);
  const auto nr = static_cast<Eigen::Index>(op.n_right);

  auto block_zero = [&](const std::string& name, const Matrix& block) {
    Eigen::Index r = 0, c = 0;
    const double worst = block.size() == 0 ? 0.0 : block.cwiseAbs().maxCoeff(&r, &c);
    report.check(name + " = 0", worst, tol,
                 worst > tol ? "entry (" + std::to_string(r) + "," + std::to_string(c) + ")" : "");
  };
  block_zero("S_L^{1,2}", op.S_left.topRightCorner(nl, nr));
  block_zero("S_L^{2,1}", op.S_left.bottomLeftCorner(nr, nl));
  block_zero("S_L^{2,2}", op.S_left.bottomRightCorner(nr, nr));
  block_zero("S_R^{1,1}", op.S_right.topLeftCorner(nl, nl));
  block_zero("S_R^{1,2}", op.S_right.topRightCorner(nl, nr));
  block_zero("S_R^{2,1}", op.S_right.bottomLeftCorner(nr, nl));

  auto support = [&](const std::string& name, const Vector& e, bool left_side) {
    const Eigen::Index begin = left_side ? nl : 0;
    const Eigen::Index count = left_side ? nr : nl;
    double worst = 0.0;
    Eigen::Index where = -1;
    for (Eigen::Index i = begin; i < begin + count; ++i) {
      if (std::abs(e[i]) > worst) {
        worst = std::abs(e[i]);
        where = i;
      }
    }
    report.check(name + (left_side ? " supported on x_L" : " supported on x_R"), worst, tol,
                 worst > tol ? "violating index " + std::to_string(where) : "");
  };
  support("e_L", op.e_left, true);
  support("e_{M_L}", op.e_mid_left, true);
  support("e_{M_R}", op.e_mid_right, false);
  support("e_R", op.e_right, false);
  return report;
}

std::pair<CellOperator, CellOperator> split_blocks(const SubcellOperator& op) {
  const auto nl = static_cast<Eigen::Index>(op.n_left);
  const auto nr = static_cast<Eigen::Index>(op.n_right);
  auto make = [&](Eigen::Index begin, Eigen::Index count, const Matrix& S, const Matrix& B,
                  const Vector& w, const Vector& e_lo, const Vector& e_hi,
                  const NodeSet& nodes, QuadratureFamily family) {
    CellOperator cell;
    cell.family = family;
    cell.degree = op.degree;
    cell.cell = nodes.interval();
    cell.nodes = nodes;
    cell.space = op.space;
    cell.D = op.D.block(begin, begin, count, count);
    cell.weights = w.segment(begin, count);
    cell.B = B.block(begin, begin, count, count);
    cell.Q = S.block(begin, begin, count, count) + 0.5 * cell.B;
    cell.e_left = e_lo.segment(begin, count);
    cell.e_right = e_hi.segment(begin, count);
    return cell;
  };
  return {make(0, nl, op.S_left, op.B_left, op.weights_left, op.e_left, op.e_mid_left,
               op.nodes_left, op.left_family),
          make(nl, nr, op.S_right, op.B_right, op.weights_right, op.e_mid_right, op.e_right,
               op.nodes_right, op.right_family)};
}

void write_operator(std::ostream& os, const SubcellOperator& op) {
  os << "# sub-cell operator degree " << op.degree << " cell [" << std::setprecision(17)
     << op.cell.left << ", " << op.cell.right << "] split " << op.split << '\n';
  Matrix x(1, static_cast<Eigen::Index>(op.size()));
  for (std::size_t i = 0; i < op.size(); ++i) x(0, i) = op.x[i];
  write_matrix(os, "x", x);
  write_matrix(os, "P", op.P());
  write_matrix(os, "P_L", op.P_left());
  write_matrix(os, "P_R", op.P_right());
  write_matrix(os, "S", op.S());
  write_matrix(os, "B", op.B());
  write_matrix(os, "D", op.D);
}

}  // namespace subcell
