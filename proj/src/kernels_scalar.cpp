#include "subcell/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>

namespace subcell::kernels {

#if defined(SUBCELL_HAVE_AVX2)
const KernelTable& avx2_table_unchecked();
#endif

namespace {

void stage_combination(double* out, const double* y, double h, const double* const* k,
                       const double* a, std::size_t n_stages, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t s = 0; s < n_stages; ++s) acc += a[s] * k[s][i];
    out[i] = y[i] + h * acc;
  }
}

double scaled_max_error(const double* err, const double* y, const double* y_new, double atol,
                        double rtol, std::size_t n) {
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    worst = std::max(worst, std::abs(err[i]) / scale);
  }
  return worst;
}

void dense_matvec(double* out, const double* a, const double* x, std::size_t rows,
                  std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = a + r * cols;
    double acc = 0.0;
    for (std::size_t c = 0; c < cols; ++c) acc += row[c] * x[c];
    out[r] = acc;
  }
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += w[i] * a[i] * b[i];
  return acc;
}

const KernelTable kScalar{"scalar", stage_combination, scaled_max_error, dense_matvec,
                          weighted_dot};

const KernelTable& select() {
  const char* forced = std::getenv("SUBCELL_SIMD");
  if (forced && std::strcmp(forced, "scalar") == 0) return kScalar;
  if (const auto* wide = avx2_table()) return *wide;
  return kScalar;
}

}  // namespace

const KernelTable& scalar_table() { return kScalar; }

const KernelTable* avx2_table() {
#if defined(SUBCELL_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

}  // namespace subcell::kernels
