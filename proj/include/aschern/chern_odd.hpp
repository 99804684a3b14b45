#pragma once

// Odd Chern character cochains of a unitary-valued sample. On a tuple
// (x_0..x_n) the unitaries are interpolated affinely over the n-simplex,
// U(t) = sum_j t_j U(x_j), and Ch^n integrates c_n Tr(U^{-1} dU)^n.

#include <span>
#include <vector>

#include "aschern/as_complex.hpp"
#include "aschern/simplex_quad.hpp"

namespace aschern {

class OddPath {
 public:
  OddPath(CMat base, std::vector<CMat> deltas);

  int n() const noexcept { return static_cast<int>(deltas_.size()); }
  const CMat& base() const noexcept { return base_; }
  std::span<const CMat> deltas() const noexcept { return deltas_; }

  /// U(t) for barycentric t = (t_0..t_n).
  CMat at(std::span<const double> t) const;

 private:
  CMat base_;
  std::vector<CMat> deltas_;  // delta_j = U(x_j) - U(x_0), j = 1..n
};

/// Checks the gap (all pairwise ||U_i - U_j|| < rho) and builds the path.
OddPath odd_path(std::span<const CMat> mats, double rho);
OddPath odd_path(const UnitarySample& sample, std::span<const PointId> tuple);

/// Coefficient of dt_1 ^ ... ^ dt_n in Tr(U(t)^{-1} dU(t))^n, by direct
/// inversion of U(t). Defined for every n; it vanishes for even n.
cplx odd_integrand(const OddPath& path, std::span<const double> t);

/// Same coefficient with U(t)^{-1} delta_j replaced by the Neumann series
/// sum_{k<=K} (-1)^k (U_0^{-1} delta)^k U_0^{-1} delta_j. Validation only.
cplx odd_integrand_series(const OddPath& path, std::span<const double> t, int K);

/// c_n times the simplex integral; n = mats.size() - 1 must be odd.
QuadResult ch_odd(std::span<const CMat> mats, double rho, const QuadSpec& spec);
cplx ch_odd(const UnitarySample& sample, std::span<const PointId> tuple, const QuadSpec& spec);

/// (1 / 2 pi i) log det(U_0^{-1} U_1) with the principal branch.
cplx ch1_closed(const CMat& u0, const CMat& u1, double rho);

MatrixCochain ch_odd_cochain(int n, double rho, const QuadSpec& spec);
MatrixCochain ch1_closed_cochain(double rho);

/// T_tau(x_0..x_{n-1}) = c_n n int_{Delta^{n-1}} Tr U^{-1} (dU/dtau) (U^{-1} dU)^{n-1}
/// at every point of a uniform tau grid on [0, 1]. `family[g]` holds the n
/// matrices of the tuple at grid point g; dU/dtau is a grid difference.
std::vector<cplx> odd_transgression(std::span<const std::vector<CMat>> family, double rho,
                                    const QuadSpec& spec);
std::vector<cplx> odd_transgression(std::span<const UnitarySample> family,
                                    std::span<const PointId> tuple, const QuadSpec& spec);

}  // namespace aschern
