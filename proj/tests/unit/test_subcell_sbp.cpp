#include <doctest.h>

#include "subcell/subcell_sbp.hpp"

#include <cmath>
#include <random>

using namespace subcell;

TEST_CASE("lobatto d=1 split at 0 has the two-point blocks") {
  const auto op = make_subcell_operator(1, {-1.0, 1.0}, 0.0, SubcellFamily::lobatto);
  REQUIRE(op.size() == 4);
  CHECK(op.x[1] == 0.0);
  CHECK(op.x[2] == 0.0);
  Matrix D(4, 4);
  D << -1, 1, 0, 0, -1, 1, 0, 0, 0, 0, -1, 1, 0, 0, -1, 1;
  CHECK((op.D - D).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("interpolation projection at a node is a unit vector") {
  const auto space = polynomial_space(2);
  const NodeSet nodes({-1.0, 0.0, 1.0}, {-1.0, 1.0});
  const Vector e = projection_vector(*space, nodes, 0.0, ProjectionMode::interpolation);
  CHECK(e[0] == 0.0);
  CHECK(e[1] == 1.0);
  CHECK(e[2] == 0.0);
}

TEST_CASE("min-norm projection equals the pseudo-inverse solution") {
  const auto space = polynomial_space(2);
  const NodeSet nodes({-1.0, -0.4, 0.2, 0.6, 1.0}, {-1.0, 1.0});
  const double point = 0.35;
  const Vector e = projection_vector(*space, nodes, point, ProjectionMode::min_norm_least_squares);

  // Independent route: monomial Vandermonde and an orthogonal decomposition.
  Matrix V(5, 3);
  for (int i = 0; i < 5; ++i)
    for (int k = 0; k < 3; ++k) V(i, k) = std::pow(nodes[i], k);
  Vector rhs(3);
  rhs << 1.0, point, point * point;
  const Vector oracle = V.transpose().completeOrthogonalDecomposition().solve(rhs);
  CHECK((e - oracle).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("projection preconditions") {
  const auto space = polynomial_space(3);
  const NodeSet few({-1.0, 0.0, 1.0}, {-1.0, 1.0});
  CHECK_THROWS_AS(projection_vector(*space, few, 0.5, ProjectionMode::min_norm_least_squares), Error);
  const NodeSet many({-1.0, -0.5, 0.0, 0.5, 1.0}, {-1.0, 1.0});
  CHECK_THROWS_AS(projection_vector(*space, many, 0.5, ProjectionMode::interpolation), Error);
  CHECK(default_projection_mode(*space, 4) == ProjectionMode::interpolation);
  CHECK(default_projection_mode(*space, 5) == ProjectionMode::min_norm_least_squares);
}

TEST_CASE("assembly rejects sub-cells that do not abut") {
  const auto left = gauss_lobatto_operator(2, {-1.0, 0.0});
  const auto right = gauss_lobatto_operator(2, {0.1, 1.0});
  CHECK_THROWS_WITH_AS(assemble_subcell(left, right), "sub-cells do not abut", Error);
  const auto other = gauss_lobatto_operator(3, {0.0, 1.0});
  CHECK_THROWS_AS(assemble_subcell(left, other), Error);
  CHECK_THROWS_AS(make_subcell_operator(2, {-1.0, 1.0}, 1.0, SubcellFamily::lobatto), Error);
}

TEST_CASE("axioms hold for both families across degrees and splits") {
  for (auto family : {SubcellFamily::lobatto, SubcellFamily::radau}) {
    for (int d = 1; d <= 6; ++d) {
      for (double split : {-0.5, 0.0, 0.3}) {
        CAPTURE(d);
        CAPTURE(split);
        const double tol = tolerance_for_degree(d);
        const auto op = make_subcell_operator(d, {-1.0, 1.0}, split, family);
        CHECK(verify_subcell(op, tol).passed());
        CHECK(structural_check(op, tol).passed());
        const auto [first, second] = existence_residuals(op);
        CHECK(first.cwiseAbs().maxCoeff() <= tol);
        CHECK(second.cwiseAbs().maxCoeff() <= tol);
      }
    }
  }
}

TEST_CASE("sub-cell derivative is exact on a random polynomial") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const auto op = make_subcell_operator(4, {0.0, 3.0}, 1.1, SubcellFamily::radau);
  double c[5];
  for (double& v : c) v = coef(rng);
  Vector f(op.size()), df(op.size());
  for (std::size_t i = 0; i < op.size(); ++i) {
    const double x = op.x[i];
    f[i] = c[0] + x * (c[1] + x * (c[2] + x * (c[3] + x * c[4])));
    df[i] = c[1] + x * (2 * c[2] + x * (3 * c[3] + x * 4 * c[4]));
  }
  CHECK((op.D * f - df).cwiseAbs().maxCoeff() < 1e-11);
  // The weights integrate it over both halves.
  const double integral = 3.0 * (c[0] + 3.0 * (c[1] / 2 + 3.0 * (c[2] / 3 + 3.0 * (c[3] / 4 + 3.0 * c[4] / 5))));
  CHECK(op.weights().dot(f) == doctest::Approx(integral).epsilon(1e-12));
}

TEST_CASE("structural check names the violating entry") {
  auto op = make_subcell_operator(2, {-1.0, 1.0}, 0.0, SubcellFamily::lobatto);
  op.S_left(1, 4) = 0.25;
  op.e_mid_left[4] = 0.5;
  const Report report = structural_check(op, 1e-13);
  CHECK_FALSE(report.passed());
  const auto* block = report.find("S_L^{1,2} = 0");
  REQUIRE(block != nullptr);
  CHECK_FALSE(block->passed);
  CHECK(block->detail == "entry (1,1)");
  const auto* support = report.find("e_{M_L} supported on x_L");
  REQUIRE(support != nullptr);
  CHECK(support->detail == "violating index 4");
}

TEST_CASE("split blocks recover stand-alone cell operators") {
  const auto op = make_subcell_operator(3, {-1.0, 1.0}, 0.3, SubcellFamily::lobatto);
  const auto [left, right] = split_blocks(op);
  CHECK(left.size() == op.n_left);
  CHECK(right.size() == op.n_right);
  CHECK(verify_cell_operator(left, 1e-12).passed());
  CHECK(verify_cell_operator(right, 1e-12).passed());
  CHECK(left.cell.right == doctest::Approx(0.3));
}
