#pragma once

// Small helpers shared by the odd and even Chern cochains.

#include <complex>
#include <span>
#include <vector>

#include "aschern/linalg.hpp"

namespace aschern {

struct SignedPermutation {
  std::vector<int> perm;
  int sign;
};

/// All of S_n in lexicographic order (cached, n <= 6).
const std::vector<SignedPermutation>& permutations(int n);

/// c_n = (-1)^((n-1)/2) ((n-1)/2)! / ((2 pi i)^((n+1)/2) n!), n odd.
cplx odd_constant(int n);

/// b_n = (-1)^(n/2) / ((2 pi i)^(n/2) (n/2)!), n even.
cplx even_constant(int n);

/// sum_sigma sgn(sigma) Tr(pre * A_{sigma(1)} ... A_{sigma(n)}); `pre` may be
/// empty, meaning the identity. This is the coefficient of dt_1 ^ ... ^ dt_n
/// in Tr(pre (sum_j A_j dt_j)^n).
cplx alternating_trace(const CMat* pre, std::span<const CMat> factors);

/// Trapezoid rule on a uniform grid of spacing h.
cplx trapezoid(std::span<const cplx> values, double h);

/// Derivative of uniformly sampled matrices at index i (central in the
/// interior, second-order one-sided at the ends).
CMat grid_derivative(std::span<const CMat> values, std::size_t i, double h);

}  // namespace aschern
