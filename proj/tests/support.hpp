#pragma once

#include <cmath>
#include <random>

#include "aschern/linalg.hpp"

namespace testing_support {

using aschern::CMat;
using aschern::cplx;

inline CMat random_matrix(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> d;
  CMat a(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) a(i, k) = cplx(d(rng), d(rng));
  return a;
}

inline CMat random_hermitian(std::size_t n, std::mt19937_64& rng) {
  const CMat a = random_matrix(n, rng);
  return 0.5 * (a + aschern::adjoint(a));
}

// Gram-Schmidt on the columns of a random matrix, written out by hand.
inline CMat random_unitary(std::size_t n, std::mt19937_64& rng) {
  CMat a = random_matrix(n, rng);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t p = 0; p < c; ++p) {
      cplx dot = 0.0;
      for (std::size_t r = 0; r < n; ++r) dot += std::conj(a(r, p)) * a(r, c);
      for (std::size_t r = 0; r < n; ++r) a(r, c) -= dot * a(r, p);
    }
    double norm = 0.0;
    for (std::size_t r = 0; r < n; ++r) norm += std::norm(a(r, c));
    norm = std::sqrt(norm);
    for (std::size_t r = 0; r < n; ++r) a(r, c) /= norm;
  }
  return a;
}

// Rank-r orthogonal projector Q diag(1..1,0..0) Q*.
inline CMat random_projector(std::size_t n, std::size_t r, std::mt19937_64& rng) {
  const CMat q = random_unitary(n, rng);
  CMat p(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < r; ++j) p(i, k) += q(i, j) * std::conj(q(k, j));
  return p;
}

// exp(i s H) by a long Taylor series with scaling and squaring.
inline CMat expm_i(const CMat& h, double s) {
  const std::size_t n = h.dim();
  int squarings = 0;
  double scale = s * aschern::frobenius_norm(h);
  while (scale > 0.25) {
    scale /= 2;
    ++squarings;
  }
  const CMat x = cplx(0.0, s / std::ldexp(1.0, squarings)) * h;
  CMat term = CMat::identity(n), sum = CMat::identity(n);
  for (int k = 1; k < 30; ++k) {
    term = (1.0 / k) * (term * x);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

inline double max_entry_diff(const CMat& a, const CMat& b) { return aschern::max_abs(a - b); }

}  // namespace testing_support
