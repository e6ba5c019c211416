#include <doctest.h>

#include "subcell/time_integration.hpp"

#include <cmath>

using namespace subcell;

TEST_CASE("exponential decay") {
  Vector w(1);
  w << 1.0;
  IntegratorOptions opt;
  opt.atol = opt.rtol = 1e-11;
  const auto stats = integrate([](double, const Vector& y, Vector& dy) { dy = -y; }, w, 0.0, 1.0, opt);
  CHECK(std::abs(w[0] - std::exp(-1.0)) < 1e-9);
  CHECK(stats.accepted > 0);
  CHECK(stats.rhs_evaluations >= 6 * stats.accepted);
}

TEST_CASE("rotation keeps the norm and samples follow the exact solution") {
  Vector w(2);
  w << 1.0, 0.0;
  IntegratorOptions opt;
  opt.atol = opt.rtol = 1e-12;
  const auto samples = uniform_samples(0.0, 10.0, 40);
  REQUIRE(samples.size() == 41);
  std::size_t seen = 0;
  double worst = 0.0;
  integrate([](double, const Vector& y, Vector& dy) { dy << -y[1], y[0]; }, w, 0.0, 10.0, opt, samples,
            [&](double t, const Vector& y) {
              CHECK(t == doctest::Approx(samples[seen]));
              ++seen;
              worst = std::max(worst, std::hypot(y[0] - std::cos(t), y[1] - std::sin(t)));
            });
  CHECK(seen == samples.size());
  CHECK(worst < 1e-9);
  CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fifth order convergence with fixed steps") {
  auto error_with_step = [](double h) {
    Vector w(1);
    w << 1.0;
    IntegratorOptions opt;
    opt.atol = opt.rtol = 1.0;  // accept everything
    opt.initial_step = h;
    opt.max_step = h;
    integrate([](double t, const Vector& y, Vector& dy) { dy = Vector::Constant(1, std::cos(t)) * y[0]; }, w,
              0.0, 1.0, opt);
    return std::abs(w[0] - std::exp(std::sin(1.0)));
  };
  const double order = std::log2(error_with_step(0.1) / error_with_step(0.05));
  CHECK(order > 4.7);
}

TEST_CASE("blow-up reports the failure time") {
  Vector w(1);
  w << 1.0;
  IntegratorOptions opt;
  opt.atol = opt.rtol = 1e-10;
  try {
    integrate([](double, const Vector& y, Vector& dy) { dy = y.cwiseProduct(y); }, w, 0.0, 2.0, opt);
    FAIL("expected an integration error");
  } catch (const IntegrationError& e) {
    CHECK(e.time() == doctest::Approx(1.0).epsilon(1e-3));
  }
}

TEST_CASE("step budget") {
  Vector w(1);
  w << 1.0;
  IntegratorOptions opt;
  opt.max_steps = 3;
  opt.max_step = 0.01;
  CHECK_THROWS_AS(integrate([](double, const Vector& y, Vector& dy) { dy = -y; }, w, 0.0, 1.0, opt),
                  IntegrationError);
}
