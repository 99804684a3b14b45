#pragma once

// Triangulated closed manifolds with sampled bundle data: the test assets on
// S^1, S^2, T^2 and S^3, their fundamental cycles and seeded random tuples.

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "aschern/as_complex.hpp"

namespace aschern {

struct Mesh {
  int dim = 0;
  std::map<PointId, std::vector<double>> vertices;
  std::vector<Tuple> simplices;  // positively oriented top simplices

  std::size_t ambient_dim() const;
};

/// Sum of the top simplices with each tuple sorted by id and the coefficient
/// set to the sign of the sorting permutation, so that shared faces cancel
/// exactly. `reversed` flips the orientation.
Chain fundamental_cycle(const Mesh& mesh, bool reversed = false);

/// Checks that every simplex refers to known vertices and has dim + 1 entries.
void validate_mesh(const Mesh& mesh);

/// Largest pairwise matrix gap inside any top simplex.
double max_simplex_gap(const Mesh& mesh, const SampledMap& sample);

/// Smooth bundle data in ambient coordinates. `derivative(x, v)` is the
/// derivative along a tangent vector v at a point x of the manifold.
struct Field {
  SampleKind kind = SampleKind::Unitary;
  std::size_t N = 0;
  std::function<CMat(std::span<const double>)> value;
  std::function<CMat(std::span<const double>, std::span<const double>)> derivative;
};

struct Asset {
  std::string name;
  Mesh mesh;
  SampledMap sample;
  Field field;
};

/// u(theta) = e^{i (k theta + wobble sin theta)} on an m-gon; requires
/// m > 6(|k| + |wobble|). The wobble keeps the degree but makes the phase
/// nonlinear in theta.
Asset gen_circle_winding(int k, int m, double wobble = 0.0);

/// Bott projector (I + x.sigma)/2 on the icosphere refined `level` times.
Asset gen_bott_sphere(int level);

/// Rank-one projector onto the k-th symmetric power of the spinor bundle.
Asset gen_monopole(int k, int level);

/// U(x) = x_0 I + i (x_1 s_1 + x_2 s_2 + x_3 s_3) on the 16-cell boundary with
/// each tetrahedron subdivided 2^level times edgewise.
Asset gen_su2_sphere3(int level);

/// Lower band of h(k) = (sin k_1, sin k_2, mass + cos k_1 + cos k_2) . sigma on
/// an m x m torus grid, embedded as (cos k_1, sin k_1, cos k_2, sin k_2).
Asset gen_two_band_torus(double mass, int m);

/// The projector of the two-band model at (k_1, k_2).
CMat two_band_projector(double mass, double k1, double k2);

/// Gap bound used for fresh samples: 0.99 for unitaries, 0.49 for projectors.
double default_rho(SampleKind kind);

/// Seeded random tuples of `length` distinct vertices taken from the star of
/// a random vertex, kept only when every pairwise gap is below `rho`.
std::vector<Tuple> random_cluster_tuples(const Mesh& mesh, const SampledMap& sample, double rho,
                                         int length, int count, std::uint64_t seed);

/// Family tau -> G_tau(x) M(x) G_tau(x)^* on a uniform grid of `steps` points in
/// [0, 1], G_tau(x) = exp(i tau amplitude sum_i x_i K_i) with seeded Hermitian
/// K_i of unit norm. 1 x 1 unitary samples are first embedded as diag(u, 1) so
/// that the conjugation acts nontrivially.
std::vector<SampledMap> conjugation_family(const Asset& asset, int steps, double amplitude,
                                           std::uint64_t seed);

/// Same generators, acting by left multiplication: tau -> G_tau(x) U(x).
/// Unitary samples only. Unlike conjugation this changes Ch^1 on individual
/// tuples, which makes the degree-one transgression check nontrivial.
std::vector<SampledMap> multiplication_family(const Asset& asset, int steps, double amplitude,
                                              std::uint64_t seed);

}  // namespace aschern
