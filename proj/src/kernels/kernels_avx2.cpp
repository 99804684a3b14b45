// Compiled with -mavx2 -mfma. Only raw pointers and intrinsics cross this
// translation unit's boundary so that no inline template gets instantiated
// with AVX2 code generation.

#include <immintrin.h>

#include "aschern/kernels.hpp"

namespace aschern::kernels {
namespace {

// Two complex numbers per __m256d: [re0, im0, re1, im1].
// acc_r collects ar * [br, bi], acc_i collects ai * [bi, br]; addsub at the end
// yields [ar br - ai bi, ar bi + ai br].
void zgemm_avx2(std::size_t n, const double* a, const double* b, double* c) {
  const std::size_t jpairs = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + 2 * i * n;
    double* crow = c + 2 * i * n;
    for (std::size_t jp = 0; jp < jpairs; ++jp) {
      __m256d acc_r = _mm256_setzero_pd();
      __m256d acc_i = _mm256_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const __m256d ar = _mm256_broadcast_sd(arow + 2 * k);
        const __m256d ai = _mm256_broadcast_sd(arow + 2 * k + 1);
        const __m256d bv = _mm256_loadu_pd(b + 2 * (k * n + 2 * jp));
        const __m256d bs = _mm256_permute_pd(bv, 0b0101);
        acc_r = _mm256_fmadd_pd(ar, bv, acc_r);
        acc_i = _mm256_fmadd_pd(ai, bs, acc_i);
      }
      _mm256_storeu_pd(crow + 4 * jp, _mm256_addsub_pd(acc_r, acc_i));
    }
    if (n % 2 != 0) {
      const std::size_t j = n - 1;
      __m128d acc_r = _mm_setzero_pd();
      __m128d acc_i = _mm_setzero_pd();
      for (std::size_t k = 0; k < n; ++k) {
        const __m128d ar = _mm_set1_pd(arow[2 * k]);
        const __m128d ai = _mm_set1_pd(arow[2 * k + 1]);
        const __m128d bv = _mm_loadu_pd(b + 2 * (k * n + j));
        const __m128d bs = _mm_permute_pd(bv, 0b01);
        acc_r = _mm_fmadd_pd(ar, bv, acc_r);
        acc_i = _mm_fmadd_pd(ai, bs, acc_i);
      }
      _mm_storeu_pd(crow + 2 * j, _mm_addsub_pd(acc_r, acc_i));
    }
  }
}

void ztrace_prod_avx2(std::size_t n, const double* a, const double* b, double* out) {
  __m256d acc_r = _mm256_setzero_pd();
  __m256d acc_i = _mm256_setzero_pd();
  const std::size_t kpairs = n / 2;
  for (std::size_t i = 0; i < n; ++i) {
    const double* arow = a + 2 * i * n;
    for (std::size_t kp = 0; kp < kpairs; ++kp) {
      const std::size_t k = 2 * kp;
      const __m256d av = _mm256_loadu_pd(arow + 2 * k);
      const __m256d bv = _mm256_set_m128d(_mm_loadu_pd(b + 2 * ((k + 1) * n + i)),
                                          _mm_loadu_pd(b + 2 * (k * n + i)));
      const __m256d ar = _mm256_movedup_pd(av);
      const __m256d ai = _mm256_permute_pd(av, 0b1111);
      acc_r = _mm256_fmadd_pd(ar, bv, acc_r);
      acc_i = _mm256_fmadd_pd(ai, _mm256_permute_pd(bv, 0b0101), acc_i);
    }
    if (n % 2 != 0) {
      const std::size_t k = n - 1;
      const __m256d av = _mm256_set_m128d(_mm_setzero_pd(), _mm_loadu_pd(arow + 2 * k));
      const __m256d bv = _mm256_set_m128d(_mm_setzero_pd(), _mm_loadu_pd(b + 2 * (k * n + i)));
      const __m256d ar = _mm256_movedup_pd(av);
      const __m256d ai = _mm256_permute_pd(av, 0b1111);
      acc_r = _mm256_fmadd_pd(ar, bv, acc_r);
      acc_i = _mm256_fmadd_pd(ai, _mm256_permute_pd(bv, 0b0101), acc_i);
    }
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_addsub_pd(acc_r, acc_i));
  out[0] = lanes[0] + lanes[2];
  out[1] = lanes[1] + lanes[3];
}

void zaxpy_real_avx2(std::size_t count, double alpha, const double* x, double* y) {
  const std::size_t len = 2 * count;
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < len; ++i) y[i] += alpha * x[i];
}

}  // namespace

const KernelTable* avx2_table() {
  static const KernelTable table{Isa::Avx2, zgemm_avx2, ztrace_prod_avx2, zaxpy_real_avx2};
  return &table;
}

}  // namespace aschern::kernels
