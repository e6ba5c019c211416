#include <doctest.h>

#include "subcell/overset_mesh.hpp"

#include <cmath>

using namespace subcell;

namespace {

double cubic(double x) { return 0.3 - x + 2 * x * x - 0.7 * x * x * x; }

double apply(const OversetMesh& mesh, const Projection& p, double (*f)(double)) {
  const auto& x = mesh.coordinates();
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.weights.size(); ++i)
    s += p.weights[i] * f(x[p.offset + static_cast<std::size_t>(i)]);
  return s;
}

}  // namespace

TEST_CASE("domain ordering is enforced") {
  CHECK_THROWS_AS(OversetDomain(-1.0, 0.2, 0.1, 1.0), Error);
  CHECK_THROWS_AS(OversetDomain(-1.0, -1.0, 0.1, 1.0), Error);
  CHECK_NOTHROW(OversetDomain(-1.0, -0.1, 0.1, 1.0));
}

TEST_CASE("split elements sit exactly at the coupling points") {
  const OversetDomain dom;
  const auto mesh = build_overset_mesh(dom, 9, 10, 3, SubcellFamily::lobatto, SplitPolicy::both);
  REQUIRE(mesh.u.split_element.has_value());
  REQUIRE(mesh.v.split_element.has_value());
  CHECK(mesh.u.elements[*mesh.u.split_element].split == dom.b);
  CHECK(mesh.v.elements[*mesh.v.split_element].split == dom.c);
  CHECK(verify_mesh(mesh).passed());

  const auto b_only = build_overset_mesh(dom, 9, 10, 3, SubcellFamily::radau, SplitPolicy::b_only);
  CHECK(b_only.u.split_element.has_value());
  CHECK_FALSE(b_only.v.split_element.has_value());
  CHECK(verify_mesh(b_only).passed());
}

TEST_CASE("counted weights cover the overlap once") {
  const OversetDomain dom;
  for (auto policy : {SplitPolicy::both, SplitPolicy::b_only}) {
    const auto mesh = build_overset_mesh(dom, 9, 10, 4, SubcellFamily::lobatto, policy);
    CHECK(mesh.u.counted_weights.sum() == doctest::Approx(dom.b - dom.a).epsilon(1e-13));
    CHECK(mesh.v.counted_weights.sum() == doctest::Approx(dom.d - dom.b).epsilon(1e-13));
    double total_u = 0.0;
    for (const auto& el : mesh.u.elements) total_u += el.weights.sum();
    CHECK(total_u == doctest::Approx(dom.c - dom.a).epsilon(1e-13));
  }
}

TEST_CASE("projections evaluate a cubic at the interface points") {
  const OversetDomain dom;
  const auto mesh = build_overset_mesh(dom, 9, 10, 3, SubcellFamily::radau, SplitPolicy::both);
  CHECK(apply(mesh, mesh.u_a, cubic) == doctest::Approx(cubic(dom.a)).epsilon(1e-13));
  CHECK(apply(mesh, mesh.u_bL, cubic) == doctest::Approx(cubic(dom.b)).epsilon(1e-13));
  CHECK(apply(mesh, mesh.u_bR, cubic) == doctest::Approx(cubic(dom.b)).epsilon(1e-13));
  CHECK(apply(mesh, mesh.v_cL, cubic) == doctest::Approx(cubic(dom.c)).epsilon(1e-13));
  CHECK(apply(mesh, mesh.v_d, cubic) == doctest::Approx(cubic(dom.d)).epsilon(1e-13));
}

TEST_CASE("one-sided projections only touch nodes on their side") {
  const OversetDomain dom;
  const auto mesh = build_overset_mesh(dom, 9, 10, 3, SubcellFamily::lobatto, SplitPolicy::both);
  const auto x = mesh.coordinates();
  const auto& el = mesh.u.elements[*mesh.u.split_element];
  for (std::size_t i = 0; i < el.size(); ++i) {
    const double xi = x[mesh.u_bL.offset + i];
    if (i >= el.n_left) CHECK(mesh.u_bL.weights[static_cast<Eigen::Index>(i)] == 0.0);
    if (i < el.n_left) CHECK(mesh.u_bR.weights[static_cast<Eigen::Index>(i)] == 0.0);
    if (i < el.n_left) CHECK(xi <= dom.b);
  }
}

TEST_CASE("baseline donors interpolate a cubic exactly") {
  const OversetDomain dom;
  const auto mesh = baseline_overset_mesh(dom, 9, 10, 3);
  REQUIRE(mesh.donor_b.has_value());
  REQUIRE(mesh.donor_c.has_value());
  CHECK(apply(mesh, mesh.donor_b->projection, cubic) == doctest::Approx(cubic(dom.b)).epsilon(1e-13));
  CHECK(apply(mesh, mesh.donor_c->projection, cubic) == doctest::Approx(cubic(dom.c)).epsilon(1e-13));
  CHECK(mesh.u.elements[mesh.donor_b->element].interval.contains(dom.b));
  // The donor element is counted whole, so the u weights exceed b - a.
  CHECK(mesh.u.counted_weights.sum() > dom.b - dom.a);
}

TEST_CASE("a conforming point needs no split") {
  const OversetDomain dom(-1.0, 0.0, 0.5, 1.0);
  const auto mesh = build_overset_mesh(dom, 3, 2, 2, SubcellFamily::lobatto, SplitPolicy::both);
  CHECK_FALSE(mesh.u.split_element.has_value());
  CHECK_FALSE(mesh.v.split_element.has_value());
  CHECK(apply(mesh, mesh.u_bL, cubic) == doctest::Approx(cubic(0.0)));
  CHECK(mesh.u.counted_weights.sum() == doctest::Approx(1.0));
}

TEST_CASE("locate_element prefers the left element on ties") {
  const auto mesh = build_overset_mesh(OversetDomain(), 4, 4, 1, SubcellFamily::lobatto, SplitPolicy::none);
  const double shared = mesh.v.elements[0].interval.right;
  CHECK(locate_element(mesh.v.elements, shared) == 0);
  CHECK(locate_element(mesh.v.elements, 1.0) == 3);
  CHECK_THROWS_AS(locate_element(mesh.v.elements, 2.0), Error);
}

TEST_CASE("single-block mesh checks operator placement") {
  const OversetDomain dom;
  const auto op_u = make_subcell_operator(3, dom.u_interval(), dom.b, SubcellFamily::lobatto);
  const auto op_v = make_subcell_operator(3, dom.v_interval(), dom.c, SubcellFamily::lobatto);
  const auto mesh = single_block_mesh(dom, op_u, op_v);
  CHECK(verify_mesh(mesh).passed());
  const auto wrong = make_subcell_operator(3, dom.u_interval(), 0.0, SubcellFamily::lobatto);
  CHECK_THROWS_AS(single_block_mesh(dom, wrong, op_v), Error);
}
