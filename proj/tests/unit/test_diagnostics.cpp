#include <doctest.h>

#include "subcell/diagnostics.hpp"

#include <cmath>

using namespace subcell;

namespace {

Semidiscretization advection(CouplingMode coupling = CouplingMode::subcell) {
  const OversetDomain dom;
  SolverConfig cfg;
  cfg.law = std::make_shared<Advection>(1.0);
  auto mesh = coupling == CouplingMode::subcell
                  ? build_overset_mesh(dom, 9, 10, 3, SubcellFamily::lobatto, SplitPolicy::both)
                  : baseline_overset_mesh(dom, 9, 10, 3);
  return Semidiscretization(std::move(mesh), cfg);
}

}  // namespace

TEST_CASE("overset integral counts the overlap once") {
  const auto sd = advection();
  const Vector one = sd.interpolate([](double) { return State{1, 0, 0}; });
  const Vector x = sd.interpolate([](double x) { return State{x, 0, 0}; });
  const Vector x5 = sd.interpolate([](double x) { return State{std::pow(x, 5), 0, 0}; });
  CHECK(overset_integral(sd, one)[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(std::abs(overset_integral(sd, x)[0]) < 1e-14);
  // Degree 5 is within the Lobatto exactness 2d - 1 on each half.
  CHECK(std::abs(overset_integral(sd, x5)[0]) < 1e-14);
  CHECK(overset_energy(sd, one) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("a constant offset gives the expected errors") {
  const auto sd = advection();
  const double delta = 1e-3;
  const ExactSolution exact = [](double x, double t) { return State{std::sin(x - t), 0, 0}; };
  const Vector w = sd.interpolate([&](double x) { return State{std::sin(x - 0.5) + delta, 0, 0}; });
  const auto err = solution_error(sd, w, exact, 0.5);
  CHECK(err.l2[0] == doctest::Approx(delta * std::sqrt(2.0)).epsilon(1e-12));
  CHECK(err.linf[0] == doctest::Approx(delta).epsilon(1e-12));
}

TEST_CASE("experimental orders") {
  // Finest pairs of published advection (d = 3) and Euler density (d = 4) tables.
  const auto a = experimental_orders({2.05e-5, 1.28e-6}, {10, 20});
  REQUIRE(a.size() == 2);
  CHECK_FALSE(a[0].has_value());
  CHECK(*a[1] == doctest::Approx(4.00).epsilon(2e-3));
  const auto b = experimental_orders({2.09e-7, 7.42e-9}, {10, 20});
  CHECK(*b[1] == doctest::Approx(4.82).epsilon(2e-3));
  const auto c = experimental_orders({1.0, 0.0}, {10, 20});
  CHECK_FALSE(c[1].has_value());
}

TEST_CASE("spectral abscissa") {
  Matrix skew(3, 3);
  skew << 0, 1, -2, -1, 0, 0.5, 2, -0.5, 0;
  CHECK(std::abs(spectral_abscissa(eigenvalues(skew))) < 1e-12);
  Matrix m(2, 2);
  m << -1, 3, 0, 0.5;
  CHECK(spectral_abscissa(eigenvalues(m)) == doctest::Approx(0.5));
}

TEST_CASE("upwind advection energy rate equals its balance") {
  for (auto coupling : {CouplingMode::subcell}) {
    const auto sd = advection(coupling);
    const Vector w = sd.interpolate([](double x) { return State{std::cos(3 * x) + x * x, 0, 0}; });
    const double rate = energy_rate(sd, 0.0, w);
    CHECK(rate <= 1e-12);
    CHECK(rate == doctest::Approx(advection_energy_balance(sd, 0.0, w)).epsilon(1e-10));
  }
}

TEST_CASE("sampled record") {
  const auto sd = advection();
  const Vector w = sd.interpolate([](double x) { return State{1.0 + 0.5 * std::sin(x), 0, 0}; });
  const State i0 = overset_integral(sd, w);
  const auto rec = sample_diagnostics(sd, 0.0, w, i0);
  CHECK(rec.integral_change[0] == 0.0);
  CHECK(rec.max_norm == doctest::Approx(w.cwiseAbs().maxCoeff()));
  CHECK_FALSE(rec.error.has_value());
}
