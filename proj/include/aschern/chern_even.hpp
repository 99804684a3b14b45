#pragma once

// Even Chern character cochains of a projector-valued sample. On a tuple
// (x_0..x_n) the projectors are averaged, a(t) = sum_j t_j e(x_j), and e(t) is
// the spectral projector of a(t) onto eigenvalues above 1/2. Ch^n integrates
// b_n Tr e (de)^n over the simplex.

#include <span>
#include <vector>

#include "aschern/as_complex.hpp"
#include "aschern/simplex_quad.hpp"

namespace aschern {

class EvenPath {
 public:
  EvenPath(CMat base, std::vector<CMat> deltas, double margin);

  int n() const noexcept { return static_cast<int>(deltas_.size()); }
  const CMat& base() const noexcept { return base_; }
  std::span<const CMat> deltas() const noexcept { return deltas_; }
  /// Smallest distance of the spectrum of a(t) from 1/2 seen while building.
  double margin() const noexcept { return margin_; }

  /// a(t) for barycentric t = (t_0..t_n).
  CMat at(std::span<const double> t) const;
  /// delta(t) = a(t) - e(x_0)
  CMat delta(std::span<const double> t) const;

 private:
  CMat base_;
  std::vector<CMat> deltas_;
  double margin_;
};

/// Checks the pairwise gap and probes the spectrum of a(t) at the vertices,
/// edge midpoints and barycenter; throws SpectralGap if any eigenvalue comes
/// closer to 1/2 than 1/2 - rho.
EvenPath even_path(std::span<const CMat> mats, double rho);
EvenPath even_path(const ProjectorSample& sample, std::span<const PointId> tuple);

/// Projector onto the eigenvectors of the Hermitian `a` with eigenvalue > 1/2.
CMat spectral_projector(const CMat& a);

/// (1 / 2 pi i) contour integral of (lambda - a)^{-1} over |lambda - 1| = 1/2,
/// trapezoid rule with m >= 32 nodes. Cross-check for spectral_projector.
CMat spectral_projector_contour(const CMat& a, int m);

/// Truncated perturbation series of e(t) about e(x_0): the k = 0 term is e_0,
/// and each word b_0 delta b_1 ... delta b_k with b_i in {e_0, 1 - e_0}
/// carries (-1)^(m-1) C(k-1, m-1), m = number of e_0 letters. Words with the
/// same m are accumulated together letter by letter. K <= 16.
CMat projector_series(const EvenPath& path, std::span<const double> t, int K);

/// e(t) together with E_j = de/dt_j by first-order perturbation theory.
struct ProjectorJet {
  CMat e;
  std::vector<CMat> derivs;
};

ProjectorJet projector_jet(const EvenPath& path, std::span<const double> t);
CMat projector_derivative(const EvenPath& path, std::span<const double> t, int j);

/// Coefficient of dt_1 ^ ... ^ dt_n in Tr e(t) (de(t))^n. Defined for every n;
/// it vanishes for odd n.
cplx even_integrand(const EvenPath& path, std::span<const double> t);

/// b_n times the simplex integral; n = mats.size() - 1 must be even and >= 2.
QuadResult ch_even(std::span<const CMat> mats, double rho, const QuadSpec& spec);
cplx ch_even(const ProjectorSample& sample, std::span<const PointId> tuple, const QuadSpec& spec);

/// Im log det W for W = (B_0* B_2)(B_2* B_1)(B_1* B_0), B_k an orthonormal basis
/// of range e(x_k).
double triple_phase_raw(std::span<const CMat> mats, double rho);

/// (1 / 2 pi) Im log det W. This is the normalization whose pairings agree
/// with Ch^2.
double triple_phase(std::span<const CMat> mats, double rho);
double triple_phase(const ProjectorSample& sample, std::span<const PointId> tuple);

MatrixCochain ch_even_cochain(int n, double rho, const QuadSpec& spec);
MatrixCochain triple_phase_cochain(double rho);

/// T_tau(x_0..x_{n-1}) = b_n int_{Delta^{n-1}} sum_j (-1)^(j-1)
/// Tr e (de)^(j-1) (de/dtau) (de)^(n-j) on a uniform tau grid on [0, 1].
/// `family[g]` holds the n projectors of the tuple at grid point g.
std::vector<cplx> even_transgression(std::span<const std::vector<CMat>> family, double rho,
                                     const QuadSpec& spec);
std::vector<cplx> even_transgression(std::span<const ProjectorSample> family,
                                     std::span<const PointId> tuple, const QuadSpec& spec);

}  // namespace aschern
