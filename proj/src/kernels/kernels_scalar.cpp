#include "aschern/kernels.hpp"

namespace aschern::kernels {
namespace {

void zgemm_scalar(std::size_t n, const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double re = 0.0;
      double im = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double ar = a[2 * (i * n + k)];
        const double ai = a[2 * (i * n + k) + 1];
        const double br = b[2 * (k * n + j)];
        const double bi = b[2 * (k * n + j) + 1];
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
      }
      c[2 * (i * n + j)] = re;
      c[2 * (i * n + j) + 1] = im;
    }
  }
}

void ztrace_prod_scalar(std::size_t n, const double* a, const double* b, double* out) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const double ar = a[2 * (i * n + k)];
      const double ai = a[2 * (i * n + k) + 1];
      const double br = b[2 * (k * n + i)];
      const double bi = b[2 * (k * n + i) + 1];
      re += ar * br - ai * bi;
      im += ar * bi + ai * br;
    }
  }
  out[0] = re;
  out[1] = im;
}

void zaxpy_real_scalar(std::size_t count, double alpha, const double* x, double* y) {
  for (std::size_t i = 0; i < 2 * count; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{Isa::Scalar, zgemm_scalar, ztrace_prod_scalar,
                                 zaxpy_real_scalar};
  return table;
}

}  // namespace aschern::kernels
