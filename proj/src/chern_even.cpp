#include "aschern/chern_even.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "aschern/error.hpp"
#include "aschern/forms.hpp"

namespace aschern {
namespace {

constexpr double kThresholdGuard = 1e-8;

struct Spectrum {
  HermitianEigen eig;
  std::vector<bool> upper;
  double margin = 0.0;
};

Spectrum decompose(const CMat& a) {
  Spectrum s;
  s.eig = herm_eig(a);
  s.margin = 1.0;
  for (double v : s.eig.values) {
    s.upper.push_back(v > 0.5);
    s.margin = std::min(s.margin, std::abs(v - 0.5));
  }
  if (s.margin < kThresholdGuard) {
    std::ostringstream msg;
    msg << "eigenvalue within " << s.margin << " of 1/2";
    fail(ErrorKind::SpectralGap, msg.str());
  }
  return s;
}

CMat to_eigenbasis(const Spectrum& s, const CMat& m) {
  return adjoint(s.eig.vectors) * m * s.eig.vectors;
}

CMat from_eigenbasis(const Spectrum& s, const CMat& m) {
  return s.eig.vectors * m * adjoint(s.eig.vectors);
}

CMat projector_hat(const Spectrum& s) {
  CMat e(s.upper.size());
  for (std::size_t p = 0; p < s.upper.size(); ++p) e(p, p) = s.upper[p] ? 1.0 : 0.0;
  return e;
}

// First-order change of the spectral projector under a -> a + eps d, with d
// and the result both in the eigenbasis of a.
CMat perturb_hat(const Spectrum& s, const CMat& d) {
  const std::size_t n = d.dim();
  CMat out(n);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (s.upper[p] == s.upper[q]) continue;
      const double gap = s.upper[p] ? s.eig.values[p] - s.eig.values[q]
                                    : s.eig.values[q] - s.eig.values[p];
      out(p, q) = d(p, q) / gap;
    }
  }
  return out;
}

struct HatJet {
  Spectrum spec;
  CMat e;
  std::vector<CMat> derivs;
};

HatJet hat_jet(const EvenPath& path, std::span<const double> t) {
  HatJet j{decompose(path.at(t)), {}, {}};
  j.e = projector_hat(j.spec);
  for (const CMat& d : path.deltas()) j.derivs.push_back(perturb_hat(j.spec, to_eigenbasis(j.spec, d)));
  return j;
}

double binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return (n == -1 && k == 0) ? 1.0 : 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

CMat orthonormal_range(const CMat& e) {
  const HermitianEigen eig = herm_eig(e);
  std::vector<std::size_t> cols;
  for (std::size_t k = 0; k < eig.values.size(); ++k)
    if (eig.values[k] > 0.5) cols.push_back(k);
  // Stored as a square matrix whose first r columns are the basis.
  CMat b(e.dim());
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t i = 0; i < e.dim(); ++i) b(i, c) = eig.vectors(i, cols[c]);
  return b;
}

}  // namespace

EvenPath::EvenPath(CMat base, std::vector<CMat> deltas, double margin)
    : base_(std::move(base)), deltas_(std::move(deltas)), margin_(margin) {}

CMat EvenPath::at(std::span<const double> t) const {
  CMat a = base_;
  for (std::size_t j = 0; j < deltas_.size(); ++j) a.add_scaled(t[j + 1], deltas_[j]);
  return a;
}

CMat EvenPath::delta(std::span<const double> t) const {
  CMat d(base_.dim());
  for (std::size_t j = 0; j < deltas_.size(); ++j) d.add_scaled(t[j + 1], deltas_[j]);
  return d;
}

EvenPath even_path(std::span<const CMat> mats, double rho) {
  if (mats.empty()) fail(ErrorKind::InvalidInput, "even_path: empty tuple");
  if (!(rho > 0.0 && rho < 0.5)) fail(ErrorKind::InvalidInput, "even gap bound must lie in (0, 1/2)");
  require_gap(mats, rho, "even_path");
  std::vector<CMat> deltas;
  for (std::size_t j = 1; j < mats.size(); ++j) deltas.push_back(mats[j] - mats[0]);
  EvenPath path(mats[0], std::move(deltas), 0.5);

  const std::size_t n = mats.size() - 1;
  std::vector<std::vector<double>> probes;
  for (std::size_t i = 0; i <= n; ++i) {
    std::vector<double> t(n + 1, 0.0);
    t[i] = 1.0;
    probes.push_back(t);
    for (std::size_t k = i + 1; k <= n; ++k) {
      std::vector<double> m(n + 1, 0.0);
      m[i] = m[k] = 0.5;
      probes.push_back(m);
    }
  }
  probes.emplace_back(n + 1, 1.0 / static_cast<double>(n + 1));

  double margin = 0.5;
  for (const auto& t : probes) {
    for (double v : herm_eig(path.at(t)).values) margin = std::min(margin, std::abs(v - 0.5));
  }
  if (margin < 0.5 - rho) {
    std::ostringstream msg;
    msg << "spectral margin " << margin << " below 1/2 - rho = " << 0.5 - rho;
    fail(ErrorKind::SpectralGap, msg.str());
  }
  return EvenPath(path.base(), {path.deltas().begin(), path.deltas().end()}, margin);
}

EvenPath even_path(const ProjectorSample& sample, std::span<const PointId> tuple) {
  const auto mats = sample.data().gather(tuple);
  return even_path(mats, sample.rho());
}

CMat spectral_projector(const CMat& a) {
  const Spectrum s = decompose(a);
  return from_eigenbasis(s, projector_hat(s));
}

CMat spectral_projector_contour(const CMat& a, int m) {
  if (m < 32) fail(ErrorKind::InvalidInput, "contour projector needs at least 32 nodes");
  if (!is_hermitian(a, 1e-10 * std::max(1.0, op_norm(a))))
    fail(ErrorKind::ContractViolation, "contour projector input is not Hermitian");
  const std::size_t n = a.dim();
  std::vector<CMat> terms;
  terms.reserve(m);
  for (int k = 0; k < m; ++k) {
    const cplx w = 0.5 * std::polar(1.0, 2.0 * std::numbers::pi * k / m);
    CMat shifted = -1.0 * a;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += 1.0 + w;
    try {
      terms.push_back((w / static_cast<double>(m)) * inverse(shifted));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::SingularMatrix) throw;
      fail(ErrorKind::SpectralGap, std::string("resolvent singular on the contour: ") + e.what());
    }
  }
  CMat e(n);
  for (std::size_t idx = 0; idx < n * n; ++idx) {
    std::vector<cplx> column(m);
    for (int k = 0; k < m; ++k) column[k] = terms[k].entries()[idx];
    e.entries()[idx] = pairwise_sum(column);
  }
  return e;
}

CMat projector_series(const EvenPath& path, std::span<const double> t, int K) {
  if (K < 0 || K > 16) fail(ErrorKind::Capability, "projector series truncation must be in 0..16");
  const std::size_t n = path.base().dim();
  const CMat& e0 = path.base();
  const CMat f0 = CMat::identity(n) - e0;
  const CMat d = path.delta(t);
  if (op_norm(d) >= 0.5) fail(ErrorKind::Gap, "projector series needs ||delta|| < 1/2");

  CMat sum = e0;
  // words[m] = sum of all words b_0 delta ... delta b_k with m letters e_0
  std::vector<CMat> words = {f0, e0};
  const CMat de = d * e0;
  const CMat df = d * f0;
  for (int k = 1; k <= K; ++k) {
    std::vector<CMat> next(k + 2, CMat(n));
    for (int m = 0; m <= k; ++m) {
      next[m] += words[m] * df;
      next[m + 1] += words[m] * de;
    }
    words = std::move(next);
    for (int m = 1; m <= k + 1; ++m) {
      const double c = ((m - 1) % 2 == 0 ? 1.0 : -1.0) * binomial(k - 1, m - 1);
      if (c != 0.0) sum.add_scaled(c, words[m]);
    }
  }
  return sum;
}

ProjectorJet projector_jet(const EvenPath& path, std::span<const double> t) {
  const HatJet h = hat_jet(path, t);
  ProjectorJet j{from_eigenbasis(h.spec, h.e), {}};
  for (const CMat& d : h.derivs) j.derivs.push_back(from_eigenbasis(h.spec, d));
  return j;
}

CMat projector_derivative(const EvenPath& path, std::span<const double> t, int j) {
  if (j < 1 || j > path.n()) fail(ErrorKind::InvalidInput, "projector derivative index out of range");
  const Spectrum s = decompose(path.at(t));
  return from_eigenbasis(s, perturb_hat(s, to_eigenbasis(s, path.deltas()[j - 1])));
}

cplx even_integrand(const EvenPath& path, std::span<const double> t) {
  const HatJet h = hat_jet(path, t);
  return alternating_trace(&h.e, h.derivs);
}

QuadResult ch_even(std::span<const CMat> mats, double rho, const QuadSpec& spec) {
  const int n = static_cast<int>(mats.size()) - 1;
  if (n < 2 || n % 2 != 0) {
    std::ostringstream msg;
    msg << "even Chern cochain needs even degree >= 2, got " << n;
    fail(ErrorKind::Domain, msg.str());
  }
  const EvenPath path = even_path(mats, rho);
  QuadResult r = integrate_simplex([&](std::span<const double> t) { return even_integrand(path, t); },
                                   n, spec);
  const cplx b = even_constant(n);
  r.value *= b;
  if (r.error_estimate) *r.error_estimate *= std::abs(b);
  return r;
}

cplx ch_even(const ProjectorSample& sample, std::span<const PointId> tuple, const QuadSpec& spec) {
  const auto mats = sample.data().gather(tuple);
  return ch_even(mats, sample.rho(), spec).value;
}

double triple_phase_raw(std::span<const CMat> mats, double rho) {
  if (mats.size() != 3) fail(ErrorKind::InvalidInput, "triple phase takes three points");
  require_gap(mats, rho, "triple_phase");
  const auto rank = [](const CMat& e) { return static_cast<long>(std::lround(trace(e).real())); };
  const long r = rank(mats[0]);
  if (rank(mats[1]) != r || rank(mats[2]) != r)
    fail(ErrorKind::InvalidInput, "triple phase: projector ranks differ");
  if (r == 0) return 0.0;

  const CMat b0 = orthonormal_range(mats[0]);
  const CMat b1 = orthonormal_range(mats[1]);
  const CMat b2 = orthonormal_range(mats[2]);
  const CMat full = (adjoint(b0) * b2) * (adjoint(b2) * b1) * (adjoint(b1) * b0);
  CMat w(static_cast<std::size_t>(r));
  for (long i = 0; i < r; ++i)
    for (long k = 0; k < r; ++k) w(i, k) = full(i, k);

  if (op_norm(w - CMat::identity(w.dim())) >= 1.0)
    fail(ErrorKind::Gap, "triple phase: cyclic overlap is too far from the identity");
  return principal_log_det(w).imag();
}

double triple_phase(std::span<const CMat> mats, double rho) {
  return triple_phase_raw(mats, rho) / (2.0 * std::numbers::pi);
}

double triple_phase(const ProjectorSample& sample, std::span<const PointId> tuple) {
  const auto mats = sample.data().gather(tuple);
  return triple_phase(mats, sample.rho());
}

MatrixCochain ch_even_cochain(int n, double rho, const QuadSpec& spec) {
  if (n < 2 || n % 2 != 0) fail(ErrorKind::Domain, "even Chern cochain needs even degree >= 2");
  spec.validate();
  return {n, rho, [rho, spec](std::span<const CMat> mats) { return ch_even(mats, rho, spec).value; }};
}

MatrixCochain triple_phase_cochain(double rho) {
  return {2, rho, [rho](std::span<const CMat> mats) { return cplx(triple_phase(mats, rho)); }};
}

std::vector<cplx> even_transgression(std::span<const std::vector<CMat>> family, double rho,
                                     const QuadSpec& spec) {
  if (family.size() < 3) fail(ErrorKind::InvalidInput, "transgression needs a tau grid of >= 3 points");
  const int n = static_cast<int>(family.front().size());
  if (n < 2 || n % 2 != 0) fail(ErrorKind::Domain, "even transgression needs even n >= 2");
  const double h = 1.0 / static_cast<double>(family.size() - 1);
  const cplx scale = even_constant(n);
  const auto& perms = permutations(n - 1);

  std::vector<cplx> out(family.size());
  for (std::size_t g = 0; g < family.size(); ++g) {
    EvenPath path = [&] {
      try {
        return even_path(family[g], rho);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Gap && e.kind() != ErrorKind::SpectralGap) throw;
        std::ostringstream msg;
        msg << e.what() << " at tau = " << g * h;
        throw Error(e.kind(), msg.str());
      }
    }();
    std::vector<CMat> vertex_rate;
    for (int i = 0; i < n; ++i) {
      std::vector<CMat> track;
      for (const auto& mats : family) track.push_back(mats[i]);
      vertex_rate.push_back(grid_derivative(track, g, h));
    }
    const auto integrand = [&](std::span<const double> t) {
      const HatJet jet = hat_jet(path, t);
      CMat rate(path.base().dim());
      for (int i = 0; i < n; ++i) rate.add_scaled(t[i], vertex_rate[i]);
      const CMat edot = perturb_hat(jet.spec, to_eigenbasis(jet.spec, rate));
      cplx total = 0.0;
      for (int j = 1; j <= n; ++j) {
        cplx slot = 0.0;
        for (const auto& sp : perms) {
          CMat prod = jet.e;
          for (int k = 0; k < n - 1; ++k) {
            if (k == j - 1) prod = prod * edot;
            prod = prod * jet.derivs[sp.perm[k]];
          }
          if (j == n) prod = prod * edot;
          slot += static_cast<double>(sp.sign) * trace(prod);
        }
        total += (j % 2 == 1) ? slot : -slot;
      }
      return total;
    };
    out[g] = scale * integrate_simplex(integrand, n - 1, spec).value;
  }
  return out;
}

std::vector<cplx> even_transgression(std::span<const ProjectorSample> family,
                                     std::span<const PointId> tuple, const QuadSpec& spec) {
  std::vector<std::vector<CMat>> mats;
  for (const auto& s : family) mats.push_back(s.data().gather(tuple));
  const double rho = family.empty() ? 0.0 : family.front().rho();
  return even_transgression(mats, rho, spec);
}

}  // namespace aschern
