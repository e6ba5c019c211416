#include <doctest.h>

#include "subcell/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace subcell::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937& rng) {
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

double max_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("scalar kernels against direct loops") {
  const auto& k = scalar_table();
  const double y[3] = {1, 2, 3}, k0[3] = {1, 0, -1}, k1[3] = {2, 2, 2};
  const double* stages[2] = {k0, k1};
  const double a[2] = {0.5, 0.25};
  double out[3];
  k.stage_combination(out, y, 2.0, stages, a, 2, 3);
  CHECK(out[0] == doctest::Approx(3.0));
  CHECK(out[2] == doctest::Approx(3.0));

  const double err[2] = {1e-3, -4e-3}, y0[2] = {1.0, 0.0}, y1[2] = {0.0, 1.0};
  CHECK(k.scaled_max_error(err, y0, y1, 1e-3, 1e-3, 2) == doctest::Approx(2.0));

  const double A[6] = {1, 2, 3, 4, 5, 6}, x[3] = {1, -1, 2};
  double r[2];
  k.dense_matvec(r, A, x, 2, 3);
  CHECK(r[0] == doctest::Approx(5.0));
  CHECK(r[1] == doctest::Approx(11.0));
  CHECK(k.weighted_dot(x, x, y, 3) == doctest::Approx(1 * 1 * 1 + -1 * -1 * 2 + 2 * 2 * 3));
}

TEST_CASE("avx2 kernels match the scalar reference") {
  const KernelTable* wide = avx2_table();
  if (!wide) {
    MESSAGE("AVX2 unavailable, equivalence not exercised");
    return;
  }
  const auto& ref = scalar_table();
  std::mt19937 rng(42);
  for (std::size_t n : {1u, 3u, 4u, 5u, 7u, 8u, 13u, 64u, 1001u}) {
    CAPTURE(n);
    const auto y = random_vector(n, rng), y2 = random_vector(n, rng);
    std::vector<std::vector<double>> k(7);
    std::vector<const double*> kp;
    for (auto& s : k) {
      s = random_vector(n, rng);
      kp.push_back(s.data());
    }
    const double a[7] = {0.1, -0.3, 0.7, 1.1, -0.2, 0.05, 0.9};
    std::vector<double> o1(n), o2(n);
    ref.stage_combination(o1.data(), y.data(), 0.01, kp.data(), a, 7, n);
    wide->stage_combination(o2.data(), y.data(), 0.01, kp.data(), a, 7, n);
    CHECK(max_diff(o1, o2) < 1e-14);

    CHECK(wide->scaled_max_error(k[0].data(), y.data(), y2.data(), 1e-8, 1e-6, n) ==
          doctest::Approx(ref.scaled_max_error(k[0].data(), y.data(), y2.data(), 1e-8, 1e-6, n)).epsilon(1e-14));

    const double s1 = ref.weighted_dot(k[1].data(), y.data(), y2.data(), n);
    const double s2 = wide->weighted_dot(k[1].data(), y.data(), y2.data(), n);
    CHECK(std::abs(s1 - s2) < 1e-13 * std::max(1.0, static_cast<double>(n)));

    const std::size_t rows = std::min<std::size_t>(n, 9);
    const auto A = random_vector(rows * n, rng);
    std::vector<double> r1(rows), r2(rows);
    ref.dense_matvec(r1.data(), A.data(), y.data(), rows, n);
    wide->dense_matvec(r2.data(), A.data(), y.data(), rows, n);
    CHECK(max_diff(r1, r2) < 1e-13 * std::max(1.0, static_cast<double>(n)));
  }
}

TEST_CASE("active table is one of the known ones") {
  const auto& t = active();
  const bool known = &t == &scalar_table() || &t == avx2_table();
  CHECK(known);
}
