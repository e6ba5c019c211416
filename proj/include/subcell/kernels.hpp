#pragma once

#include <cstddef>
#include <string>

namespace subcell::kernels {

// Data-parallel loops of the time integrator and the volume term. Each entry
// has a scalar reference implementation; wider variants must agree with it
// up to rounding.
struct KernelTable {
  const char* name;

  // out[i] = y[i] + h * sum_s a[s] * k[s][i]
  void (*stage_combination)(double* out, const double* y, double h,
                            const double* const* k, const double* a,
                            std::size_t n_stages, std::size_t n);

  // max_i |err[i]| / (atol + rtol * max(|y[i]|, |y_new[i]|))
  double (*scaled_max_error)(const double* err, const double* y,
                             const double* y_new, double atol, double rtol,
                             std::size_t n);

  // out = A x with A row-major, rows x cols.
  void (*dense_matvec)(double* out, const double* a, const double* x,
                       std::size_t rows, std::size_t cols);

  // sum_i w[i] * a[i] * b[i]
  double (*weighted_dot)(const double* w, const double* a, const double* b,
                         std::size_t n);
};

const KernelTable& scalar_table();

// nullptr when the binary was built without the AVX2 unit or the CPU lacks
// AVX2/FMA.
const KernelTable* avx2_table();

// Chosen once per process: the widest supported table, unless the
// environment variable SUBCELL_SIMD=scalar forces the reference path.
const KernelTable& active();

}  // namespace subcell::kernels
