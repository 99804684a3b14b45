#include "aschern/forms.hpp"

#include <algorithm>
#include <array>
#include <mutex>
#include <numbers>
#include <numeric>

#include "aschern/error.hpp"

namespace aschern {

const std::vector<SignedPermutation>& permutations(int n) {
  static std::array<std::vector<SignedPermutation>, 7> cache;
  static std::once_flag once;
  std::call_once(once, [] {
    for (int m = 0; m <= 6; ++m) {
      std::vector<int> p(m);
      std::iota(p.begin(), p.end(), 0);
      do {
        int inversions = 0;
        for (int i = 0; i < m; ++i)
          for (int j = i + 1; j < m; ++j)
            if (p[i] > p[j]) ++inversions;
        cache[m].push_back({p, inversions % 2 == 0 ? 1 : -1});
      } while (std::next_permutation(p.begin(), p.end()));
    }
  });
  if (n < 0 || n > 6) fail(ErrorKind::Capability, "permutation sums are limited to n <= 6");
  return cache[n];
}

namespace {
double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}
}  // namespace

cplx odd_constant(int n) {
  if (n < 1 || n % 2 == 0) fail(ErrorKind::Domain, "odd Chern constant needs odd n");
  const int h = (n - 1) / 2;
  const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
  return ((h % 2 == 0) ? 1.0 : -1.0) * factorial(h) / (std::pow(two_pi_i, (n + 1) / 2) * factorial(n));
}

cplx even_constant(int n) {
  if (n < 0 || n % 2 != 0) fail(ErrorKind::Domain, "even Chern constant needs even n");
  const int h = n / 2;
  const cplx two_pi_i(0.0, 2.0 * std::numbers::pi);
  return ((h % 2 == 0) ? 1.0 : -1.0) / (std::pow(two_pi_i, h) * factorial(h));
}

cplx alternating_trace(const CMat* pre, std::span<const CMat> factors) {
  const int n = static_cast<int>(factors.size());
  if (n == 0) {
    if (pre == nullptr) fail(ErrorKind::InvalidInput, "empty alternating trace");
    return trace(*pre);
  }
  cplx sum = 0.0;
  for (const auto& sp : permutations(n)) {
    // Tr(pre A_p0 ... A_p(n-2) * A_p(n-1)) with the last product folded into
    // the trace kernel.
    CMat left = pre ? *pre : factors[sp.perm[0]];
    for (int i = pre ? 0 : 1; i + 1 < n; ++i) left = left * factors[sp.perm[i]];
    const cplx term = (pre || n > 1) ? trace_product(left, factors[sp.perm[n - 1]]) : trace(left);
    sum += static_cast<double>(sp.sign) * term;
  }
  return sum;
}

cplx trapezoid(std::span<const cplx> values, double h) {
  if (values.size() < 2) return 0.0;
  cplx s = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) s += values[i];
  return h * s;
}

CMat grid_derivative(std::span<const CMat> values, std::size_t i, double h) {
  const std::size_t m = values.size();
  if (m < 3) fail(ErrorKind::InvalidInput, "finite differences need at least 3 grid points");
  CMat d;
  if (i == 0) {
    d = -3.0 * CMat(values[0]) + 4.0 * CMat(values[1]) - values[2];
  } else if (i + 1 == m) {
    d = 3.0 * CMat(values[m - 1]) - 4.0 * CMat(values[m - 2]) + values[m - 3];
  } else {
    d = values[i + 1] - values[i - 1];
  }
  d *= 1.0 / (2.0 * h);
  return d;
}

}  // namespace aschern
