#pragma once

// Comparison of Alexander-Spanier cochains with differential forms: the
// lambda map by finite differences along exact curves, the analytic Chern
// forms, and dense-grid integrals of those forms used as independent oracles.

#include <cstdint>
#include <functional>
#include <vector>

#include "aschern/geometry.hpp"

namespace aschern {

struct TangentProbe {
  std::vector<double> base;
  std::vector<std::vector<double>> tangents;
  std::vector<std::function<std::vector<double>(double)>> curves;  // curves[j](0) = base
};

/// Great-circle curves x cos(eps) + v sin(eps) for unit tangents v orthogonal to x.
TangentProbe sphere_probe(std::vector<double> x, std::vector<std::vector<double>> tangents);

/// Coordinate curves on the torus embedded as (cos k1, sin k1, cos k2, sin k2).
TangentProbe torus_probe(double k1, double k2);

/// Seeded probes at random points with n orthonormal tangents, for the
/// asset's manifold.
std::vector<TangentProbe> random_probes(const Asset& asset, int n, int count, std::uint64_t seed);

/// (1/n!) sum_sigma sgn(sigma) d_eps1 ... d_epsn phi(x_0, x_sigma(1)(eps_1), ...)
/// with central differences of step h.
cplx lambda_map(const MatrixCochain& phi, const Field& field, const TangentProbe& probe, double h);

/// c_n (1/n!) sum_sigma sgn(sigma) Tr U^{-1} (L_{v_sigma(1)} U) ... U^{-1} (L_{v_sigma(n)} U)
cplx analytic_form_odd(const Field& field, std::span<const double> x,
                       std::span<const std::vector<double>> tangents);

/// b_n (1/n!) sum_sigma sgn(sigma) Tr e (L_{v_sigma(1)} e) ... (L_{v_sigma(n)} e)
cplx analytic_form_even(const Field& field, std::span<const double> x,
                        std::span<const std::vector<double>> tangents);

struct DerhamReport {
  std::vector<double> steps;
  std::vector<double> errors;  // max over probes
  std::vector<double> orders;  // log2 ratio between successive steps
  bool monotone = false;
  double min_order = 0.0;
  bool pass = false;
};

/// Measures |lambda_h(phi) - analytic form| over probes for each h. Passes
/// when the error decreases monotonically with observed order >= 1, or when
/// it stays below 1e-12 (a vanishing form).
DerhamReport derham_convergence(const MatrixCochain& phi, const Field& field,
                                std::span<const TangentProbe> probes, std::span<const double> steps);

/// Integrals of the Chern forms over the whole manifold on tensor grids:
/// Gauss-Legendre in polar angles, trapezoid in periodic ones. Orientation
/// follows the mesh convention (det[x, frame] > 0).
cplx circle_form_integral(const Field& field, int points);
cplx sphere2_form_integral(const Field& field, int points);
cplx sphere3_form_integral(const Field& field, int points);

/// b_2 times the sum of principal logs of plaquette products of normalized
/// link variables <u(k)|u(k + mu)> of the range vector of proj(k1, k2).
cplx lattice_chern_number(const std::function<CMat(double, double)>& proj, int m);

/// Nodes and weights of the Gauss-Legendre rule on [a, b].
void gauss_legendre(int n, double a, double b, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace aschern
