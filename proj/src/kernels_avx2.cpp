// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include "subcell/kernels.hpp"

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace subcell::kernels {

namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline double horizontal_max(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_max_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_max_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

inline __m256d abs_pd(__m256d v) {
  return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

void stage_combination(double* out, const double* y, double h, const double* const* k,
                       const double* a, std::size_t n_stages, std::size_t n) {
  const __m256d hv = _mm256_set1_pd(h);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d acc = _mm256_setzero_pd();
    for (std::size_t s = 0; s < n_stages; ++s)
      acc = _mm256_fmadd_pd(_mm256_set1_pd(a[s]), _mm256_loadu_pd(k[s] + i), acc);
    _mm256_storeu_pd(out + i, _mm256_fmadd_pd(hv, acc, _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t s = 0; s < n_stages; ++s) acc += a[s] * k[s][i];
    out[i] = y[i] + h * acc;
  }
}

double scaled_max_error(const double* err, const double* y, const double* y_new, double atol,
                        double rtol, std::size_t n) {
  const __m256d av = _mm256_set1_pd(atol);
  const __m256d rv = _mm256_set1_pd(rtol);
  __m256d worst = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mag = _mm256_max_pd(abs_pd(_mm256_loadu_pd(y + i)),
                                      abs_pd(_mm256_loadu_pd(y_new + i)));
    const __m256d scale = _mm256_fmadd_pd(rv, mag, av);
    worst = _mm256_max_pd(worst, _mm256_div_pd(abs_pd(_mm256_loadu_pd(err + i)), scale));
  }
  double result = horizontal_max(worst);
  for (; i < n; ++i) {
    const double scale = atol + rtol * std::max(std::abs(y[i]), std::abs(y_new[i]));
    result = std::max(result, std::abs(err[i]) / scale);
  }
  return result;
}

void dense_matvec(double* out, const double* a, const double* x, std::size_t rows,
                  std::size_t cols) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = a + r * cols;
    __m256d acc = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + c), _mm256_loadu_pd(x + c), acc);
    double sum = horizontal_sum(acc);
    for (; c < cols; ++c) sum += row[c] * x[c];
    out[r] = sum;
  }
}

double weighted_dot(const double* w, const double* a, const double* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d wa = _mm256_mul_pd(_mm256_loadu_pd(w + i), _mm256_loadu_pd(a + i));
    acc = _mm256_fmadd_pd(wa, _mm256_loadu_pd(b + i), acc);
  }
  double sum = horizontal_sum(acc);
  for (; i < n; ++i) sum += w[i] * a[i] * b[i];
  return sum;
}

const KernelTable kAvx2{"avx2", stage_combination, scaled_max_error, dense_matvec,
                        weighted_dot};

}  // namespace

const KernelTable& avx2_table_unchecked() { return kAvx2; }

}  // namespace subcell::kernels
