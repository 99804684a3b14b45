#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "aschern/error.hpp"
#include "aschern/geometry.hpp"

namespace aschern {

std::size_t Mesh::ambient_dim() const {
  return vertices.empty() ? 0 : vertices.begin()->second.size();
}

void validate_mesh(const Mesh& mesh) {
  if (mesh.dim < 1) fail(ErrorKind::InvalidInput, "mesh dimension must be >= 1");
  const std::size_t amb = mesh.ambient_dim();
  for (const auto& [id, x] : mesh.vertices) {
    if (x.size() != amb) fail(ErrorKind::InvalidInput, "mesh vertices have mixed dimensions");
    for (double c : x)
      if (!std::isfinite(c)) fail(ErrorKind::InvalidInput, "mesh vertex " + std::to_string(id) + " is not finite");
  }
  for (const auto& s : mesh.simplices) {
    if (s.size() != static_cast<std::size_t>(mesh.dim + 1))
      fail(ErrorKind::InvalidInput, "simplex " + format_tuple(s) + " has the wrong length");
    for (PointId id : s)
      if (!mesh.vertices.count(id))
        fail(ErrorKind::InvalidInput, "simplex " + format_tuple(s) + " uses unknown vertex");
  }
}

Chain fundamental_cycle(const Mesh& mesh, bool reversed) {
  std::vector<ChainTerm> terms;
  terms.reserve(mesh.simplices.size());
  for (const auto& s : mesh.simplices) {
    Tuple sorted = s;
    int sign = reversed ? -1 : 1;
    // insertion sort, counting transpositions
    for (std::size_t i = 1; i < sorted.size(); ++i) {
      for (std::size_t j = i; j > 0 && sorted[j - 1] > sorted[j]; --j) {
        std::swap(sorted[j - 1], sorted[j]);
        sign = -sign;
      }
    }
    terms.push_back({cplx(sign), std::move(sorted)});
  }
  return Chain(mesh.dim, std::move(terms));
}

double max_simplex_gap(const Mesh& mesh, const SampledMap& sample) {
  double worst = 0.0;
  for (const auto& s : mesh.simplices) {
    const auto mats = sample.gather(s);
    worst = std::max(worst, max_pairwise_gap(mats));
  }
  return worst;
}

double default_rho(SampleKind kind) { return kind == SampleKind::Unitary ? 0.99 : 0.49; }

std::vector<Tuple> random_cluster_tuples(const Mesh& mesh, const SampledMap& sample, double rho,
                                         int length, int count, std::uint64_t seed) {
  if (length < 1 || count < 0) fail(ErrorKind::InvalidInput, "bad random tuple request");
  std::map<PointId, std::set<PointId>> star;
  for (const auto& s : mesh.simplices)
    for (PointId a : s)
      for (PointId b : s) star[a].insert(b);
  std::vector<PointId> centers;
  for (const auto& [id, nb] : star)
    if (nb.size() >= static_cast<std::size_t>(length)) centers.push_back(id);
  if (centers.empty()) fail(ErrorKind::Admissibility, "no vertex star is large enough for the tuple length");

  std::mt19937_64 rng(seed);
  std::vector<Tuple> out;
  const long budget = 1000L * std::max(count, 1);
  for (long attempt = 0; attempt < budget && static_cast<int>(out.size()) < count; ++attempt) {
    const PointId c = centers[rng() % centers.size()];
    std::vector<PointId> pool(star[c].begin(), star[c].end());
    for (int i = 0; i < length; ++i) {
      const std::size_t j = i + rng() % (pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    Tuple t(pool.begin(), pool.begin() + length);
    const auto mats = sample.gather(t);
    if (max_pairwise_gap(mats) < rho) out.push_back(std::move(t));
  }
  if (static_cast<int>(out.size()) < count) {
    std::ostringstream msg;
    msg << "found only " << out.size() << " admissible " << length << "-tuples of " << count;
    fail(ErrorKind::Admissibility, msg.str());
  }
  return out;
}

namespace {

std::vector<SampledMap> unitary_family(const Asset& asset, int steps, double amplitude,
                                       std::uint64_t seed, bool conjugate) {
  if (steps < 3) fail(ErrorKind::InvalidInput, "homotopy family needs >= 3 steps");
  const SampledMap& base = asset.sample;
  const bool embed = base.kind() == SampleKind::Unitary && base.N() == 1;
  const std::size_t n = embed ? 2 : base.N();
  const std::size_t amb = asset.mesh.ambient_dim();

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  std::vector<CMat> gens;
  for (std::size_t i = 0; i < amb; ++i) {
    CMat k(n);
    for (std::size_t r = 0; r < n; ++r) {
      k(r, r) = normal(rng);
      for (std::size_t c = r + 1; c < n; ++c) {
        k(r, c) = cplx(normal(rng), normal(rng));
        k(c, r) = std::conj(k(r, c));
      }
    }
    k *= 1.0 / op_norm(k);
    gens.push_back(std::move(k));
  }

  std::vector<SampledMap> family;
  for (int g = 0; g < steps; ++g) {
    const double tau = static_cast<double>(g) / (steps - 1);
    SampledMap m(base.kind(), n, base.rho());
    for (PointId id : base.ids()) {
      CMat mat = base.at(id);
      if (embed) {
        CMat big = CMat::identity(2);
        big(0, 0) = mat(0, 0);
        mat = big;
      }
      const auto& x = asset.mesh.vertices.at(id);
      CMat h(n);
      for (std::size_t i = 0; i < amb; ++i) h.add_scaled(x[i], gens[i]);
      const CMat gmat = unitary_exp(h, tau * amplitude);
      m.insert(id, conjugate ? gmat * mat * adjoint(gmat) : gmat * mat);
    }
    family.push_back(std::move(m));
  }
  return family;
}

}  // namespace

std::vector<SampledMap> conjugation_family(const Asset& asset, int steps, double amplitude,
                                           std::uint64_t seed) {
  return unitary_family(asset, steps, amplitude, seed, true);
}

std::vector<SampledMap> multiplication_family(const Asset& asset, int steps, double amplitude,
                                              std::uint64_t seed) {
  if (asset.sample.kind() != SampleKind::Unitary)
    fail(ErrorKind::InvalidInput, "multiplication family needs a unitary sample");
  return unitary_family(asset, steps, amplitude, seed, false);
}

}  // namespace aschern
