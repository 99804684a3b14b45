#include <gtest/gtest.h>

#include <numbers>

#include "aschern/chern_even.hpp"
#include "aschern/error.hpp"
#include "aschern/forms.hpp"
#include "aschern/geometry.hpp"
#include "aschern/suites.hpp"
#include "support.hpp"

using namespace aschern;
using testing_support::expm_i;
using testing_support::random_hermitian;
using testing_support::random_projector;

namespace {

constexpr double kPi = std::numbers::pi;

// rank-1 projector onto (cos a, e^{ib} sin a)
CMat line(double a, double b = 0.0) {
  const cplx v0 = std::cos(a), v1 = std::polar(std::sin(a), b);
  return CMat::from_rows({{v0 * std::conj(v0), v0 * std::conj(v1)}, {v1 * std::conj(v0), v1 * std::conj(v1)}});
}

// projectors conjugated away from a random base by small unitaries
std::vector<CMat> nearby_projectors(std::size_t N, std::size_t r, int count, double step, std::mt19937_64& rng) {
  const CMat e0 = random_projector(N, r, rng);
  std::vector<CMat> out = {e0};
  for (int i = 1; i < count; ++i) {
    CMat h = random_hermitian(N, rng);
    h *= 1.0 / op_norm(h);
    const CMat u = expm_i(h, step);
    out.push_back(u * e0 * adjoint(u));
  }
  return out;
}

QuadSpec fixed(int degree, int subdiv) {
  QuadSpec q;
  q.degree = degree;
  q.subdiv = subdiv;
  return q;
}

double choose(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
  return c;
}

// Every word b_0 d b_1 ... d b_k enumerated explicitly, each with
// coefficient (-1)^(m-1) C(k-1, m-1) where m counts the letters e_0.
CMat series_by_words(const CMat& e0, const CMat& d, int K) {
  const std::size_t n = e0.dim();
  const CMat f0 = CMat::identity(n) - e0;
  CMat sum = e0;
  for (int k = 1; k <= K; ++k) {
    for (unsigned mask = 0; mask < (1u << (k + 1)); ++mask) {
      CMat w = (mask & 1u) ? e0 : f0;
      int m = (mask & 1u) ? 1 : 0;
      for (int i = 1; i <= k; ++i) {
        const bool is_e = (mask >> i) & 1u;
        w = w * d * (is_e ? e0 : f0);
        m += is_e;
      }
      const double c = ((m - 1) % 2 == 0 ? 1.0 : -1.0) * choose(k - 1, m - 1);
      if (c != 0.0) sum.add_scaled(c, w);
    }
  }
  return sum;
}

// top-eigenvector projector of a real symmetric 2x2 [[p, q], [q, r]] and its
// derivative given the derivative of the entries
void real_2x2_projector(double p, double q, double r, double dp, double dq, double dr, CMat& e, CMat& de) {
  const double psi = 0.5 * std::atan2(2 * q, p - r);
  const double dpsi = (dq * (p - r) - q * (dp - dr)) / ((p - r) * (p - r) + 4 * q * q);
  const double c = std::cos(psi), s = std::sin(psi);
  e = CMat::from_rows({{c * c, c * s}, {c * s, s * s}});
  de = CMat::from_rows({{-2 * c * s * dpsi, (c * c - s * s) * dpsi}, {(c * c - s * s) * dpsi, 2 * c * s * dpsi}});
}

}  // namespace

TEST(EvenPath, ConstantTupleAndVertices) {
  std::mt19937_64 rng(1);
  const CMat e = random_projector(3, 1, rng);
  const std::vector<CMat> same = {e, e, e};
  const EvenPath p = even_path(same, 0.4);
  const double t[] = {0.3, 0.3, 0.4};
  EXPECT_LT(max_abs(p.at(t) - e), 1e-15);
  for (double v : herm_eig(p.at(t)).values) EXPECT_LT(std::min(std::abs(v), std::abs(v - 1.0)), 1e-12);

  const auto mats = nearby_projectors(4, 2, 3, 0.1, rng);
  const EvenPath q = even_path(mats, 0.4);
  for (int j = 0; j < 3; ++j) {
    std::vector<double> v(3, 0.0);
    v[j] = 1.0;
    EXPECT_LT(max_abs(q.at(v) - mats[j]), 1e-15);
  }
}

TEST(EvenPath, TwoLinesMidpointSpectrum) {
  const double theta = 0.4;
  const std::vector<CMat> mats = {line(0.0), line(theta)};
  EXPECT_NEAR(op_norm(mats[1] - mats[0]), std::sin(theta), 1e-14);
  const EvenPath p = even_path(mats, 0.49);
  const double t[] = {0.5, 0.5};
  const auto vals = herm_eig(p.at(t)).values;
  EXPECT_NEAR(vals[0], 0.5 * (1 - std::cos(theta)), 1e-14);
  EXPECT_NEAR(vals[1], 0.5 * (1 + std::cos(theta)), 1e-14);
  EXPECT_GT(p.margin(), 0.5 - 0.49);
}

TEST(EvenPath, RejectsLargeGapAndBadRho) {
  const std::vector<CMat> mats = {line(0.0), line(0.7)};
  EXPECT_THROW(even_path(mats, 0.45), Error);
  EXPECT_THROW(even_path(mats, 0.6), Error);
}

TEST(SpectralProjector, FixedPointsAndThreshold) {
  std::mt19937_64 rng(2);
  const CMat e = random_projector(5, 2, rng);
  EXPECT_LT(max_abs(spectral_projector(e) - e), 1e-12);
  EXPECT_LT(std::abs(spectral_projector(CMat::diag({0.9}))(0, 0) - 1.0), 1e-15);
  EXPECT_LT(std::abs(spectral_projector(CMat::diag({0.1}))(0, 0)), 1e-15);
}

TEST(SpectralProjector, EigenMatchesContour) {
  std::mt19937_64 rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    const auto mats = nearby_projectors(4, 2, 3, 0.15, rng);
    const EvenPath p = even_path(mats, 0.45);
    const double t[] = {0.2, 0.5, 0.3};
    const CMat a = p.at(t);
    EXPECT_LT(op_norm(spectral_projector(a) - spectral_projector_contour(a, 64)), 1e-10);
  }
}

TEST(SpectralProjectorContour, DiagonalAndGeometricDecay) {
  EXPECT_LT(max_abs(spectral_projector_contour(CMat::diag({0.0, 1.0}), 64) - CMat::diag({0.0, 1.0})), 1e-12);
  EXPECT_LT(max_abs(spectral_projector_contour(CMat::diag({0.2, 0.8}), 64) - CMat::diag({0.0, 1.0})), 1e-10);
  const CMat a = CMat::diag({0.3, 0.75, 0.05});
  const CMat exact = spectral_projector(a);
  const double e32 = op_norm(spectral_projector_contour(a, 32) - exact);
  const double e48 = op_norm(spectral_projector_contour(a, 48) - exact);
  const double e64 = op_norm(spectral_projector_contour(a, 64) - exact);
  EXPECT_LT(e48, e32);
  // geometric: the error roughly squares when m doubles
  EXPECT_LT(e64, 10.0 * e32 * e32 + 1e-15);
  EXPECT_THROW(spectral_projector_contour(a, 16), Error);
}

TEST(ProjectorSeries, ZeroDeltaIsExact) {
  std::mt19937_64 rng(4);
  const CMat e = random_projector(3, 1, rng);
  const std::vector<CMat> same = {e, e};
  const EvenPath p = even_path(same, 0.3);
  const double t[] = {0.4, 0.6};
  for (int K : {0, 1, 5, 16}) EXPECT_EQ(max_abs(projector_series(p, t, K) - e), 0.0);
  const auto mats = nearby_projectors(3, 1, 2, 0.2, rng);
  const double v0[] = {1.0, 0.0};
  EXPECT_EQ(max_abs(projector_series(even_path(mats, 0.45), v0, 7) - mats[0]), 0.0);
}

TEST(ProjectorSeries, FirstOrderHandExpansion) {
  std::mt19937_64 rng(5);
  const auto mats = nearby_projectors(4, 2, 3, 0.1, rng);
  const EvenPath p = even_path(mats, 0.45);
  const double t[] = {0.2, 0.3, 0.5};
  const CMat e0 = mats[0], f0 = CMat::identity(4) - e0, d = p.delta(t);
  const CMat expected = e0 + e0 * d * f0 + f0 * d * e0;
  EXPECT_LT(max_abs(projector_series(p, t, 1) - expected), 1e-15);
}

TEST(ProjectorSeries, MatchesWordEnumeration) {
  std::mt19937_64 rng(6);
  for (int rep = 0; rep < 3; ++rep) {
    const auto mats = nearby_projectors(3, 1, 3, 0.12, rng);
    const EvenPath p = even_path(mats, 0.45);
    const double t[] = {0.1, 0.6, 0.3};
    for (int K = 0; K <= 8; ++K)
      EXPECT_LT(max_abs(projector_series(p, t, K) - series_by_words(mats[0], p.delta(t), K)), 1e-13) << "K=" << K;
  }
}

TEST(ProjectorSeries, GeometricDecayAtGapPointThree) {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto mats = random_projector_triple(4, 2, 0.3, seed);
    ASSERT_LT(max_pairwise_gap(mats), 0.3);
    const EvenPath p = even_path(mats, 0.3);
    const double t[] = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const CMat exact = spectral_projector(p.at(t));
    const double d = op_norm(p.delta(t));
    double prev = op_norm(projector_series(p, t, 0) - exact);
    for (int K = 1; K <= 10; ++K) {
      const double err = op_norm(projector_series(p, t, K) - exact);
      EXPECT_LT(err, prev);
      prev = err;
    }
    EXPECT_LT(prev, 1e-4);
    // envelope: error after K terms is bounded by a constant times (2 ||delta||)^K
    EXPECT_LT(prev, 4.0 * std::pow(2.0 * d, 10));
  }
}

TEST(ProjectorSeries, RefusesLargeDelta) {
  const std::vector<CMat> mats = {CMat::diag({1.0, 0.0}), CMat::diag({1.0, 0.0})};
  const EvenPath p(mats[0], {CMat::diag({-0.6, 0.0})}, 0.1);
  const double t[] = {0.0, 1.0};
  EXPECT_THROW(projector_series(p, t, 3), Error);
  EXPECT_THROW(projector_series(p, t, 17), Error);
}

TEST(ProjectorDerivative, ConstantAndFiniteDifference) {
  std::mt19937_64 rng(7);
  const CMat e = random_projector(3, 1, rng);
  const std::vector<CMat> same = {e, e, e};
  const double t[] = {0.3, 0.3, 0.4};
  EXPECT_LT(max_abs(projector_derivative(even_path(same, 0.4), t, 1)), 1e-14);

  for (int rep = 0; rep < 5; ++rep) {
    const auto mats = nearby_projectors(4, 2, 3, 0.15, rng);
    const EvenPath p = even_path(mats, 0.45);
    const double h = 1e-5;
    for (int j = 1; j <= 2; ++j) {
      double tp[] = {0.3, 0.3, 0.4}, tm[] = {0.3, 0.3, 0.4};
      tp[j] += h;
      tm[j] -= h;
      const CMat fd = (1.0 / (2 * h)) * (spectral_projector(p.at(tp)) - spectral_projector(p.at(tm)));
      EXPECT_LT(max_abs(projector_derivative(p, t, j) - fd), 1e-7);
    }
  }
  EXPECT_THROW(projector_derivative(even_path(same, 0.4), t, 3), Error);
}

TEST(ProjectorDerivative, RealTwoByTwoClosedForm) {
  const std::vector<CMat> mats = {line(0.1), line(0.45)};
  const EvenPath p = even_path(mats, 0.45);
  const CMat d = mats[1] - mats[0];
  for (double s : {0.0, 0.3, 0.8}) {
    const double t[] = {1.0 - s, s};
    const CMat a = p.at(t);
    CMat e, de;
    real_2x2_projector(a(0, 0).real(), a(0, 1).real(), a(1, 1).real(), d(0, 0).real(), d(0, 1).real(),
                       d(1, 1).real(), e, de);
    EXPECT_LT(max_abs(spectral_projector(a) - e), 1e-13);
    EXPECT_LT(max_abs(projector_derivative(p, t, 1) - de), 1e-12);
  }
}

TEST(EvenIntegrand, OddDegreeVanishes) {
  std::mt19937_64 rng(8);
  for (int rep = 0; rep < 5; ++rep) {
    const auto mats2 = nearby_projectors(3, 1, 2, 0.2, rng);
    const double t2[] = {0.4, 0.6};
    EXPECT_LT(std::abs(even_integrand(even_path(mats2, 0.45), t2)), 1e-12);
    const auto mats4 = nearby_projectors(4, 2, 4, 0.1, rng);
    const double t4[] = {0.1, 0.2, 0.3, 0.4};
    EXPECT_LT(std::abs(even_integrand(even_path(mats4, 0.45), t4)), 1e-12);
  }
}

TEST(ChEven, ConstantSampleDomainAndCocycle) {
  std::mt19937_64 rng(9);
  const CMat e = random_projector(3, 1, rng);
  const std::vector<CMat> same = {e, e, e};
  EXPECT_LT(std::abs(ch_even(same, 0.4, fixed(7, 1)).value), 1e-15);
  const std::vector<CMat> two = {e, e};
  EXPECT_THROW(ch_even(two, 0.4, fixed(7, 1)), Error);

  for (int rep = 0; rep < 5; ++rep) {
    const auto mats = nearby_projectors(3, 1, 4, 0.12, rng);
    cplx sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      std::vector<CMat> face;
      for (int i = 0; i < 4; ++i)
        if (i != j) face.push_back(mats[i]);
      sum += (j % 2 == 0 ? 1.0 : -1.0) * ch_even(face, 0.45, fixed(7, 2)).value;
    }
    EXPECT_LT(std::abs(sum), 1e-7);
  }
}

TEST(TriplePhase, CoincidentPointsAndBargmann) {
  const CMat e = line(0.3, 0.2);
  const std::vector<CMat> same = {e, e, e};
  EXPECT_EQ(triple_phase(same, 0.45), 0.0);

  const double a[] = {0.1, 0.3, 0.25}, b[] = {0.0, 0.4, -0.5};
  std::vector<CMat> mats;
  std::vector<std::array<cplx, 2>> v;
  for (int k = 0; k < 3; ++k) {
    mats.push_back(line(a[k], b[k]));
    v.push_back({std::cos(a[k]), std::polar(std::sin(a[k]), b[k])});
  }
  const auto dot = [&](int i, int j) { return std::conj(v[i][0]) * v[j][0] + std::conj(v[i][1]) * v[j][1]; };
  const double arg = std::arg(dot(0, 2) * dot(2, 1) * dot(1, 0));
  EXPECT_NEAR(triple_phase_raw(mats, 0.45), arg, 1e-14);
  EXPECT_NEAR(triple_phase(mats, 0.45), arg / (2 * kPi), 1e-15);
}

TEST(TriplePhase, BasisIndependentAndCocycle) {
  std::mt19937_64 rng(10);
  for (int rep = 0; rep < 5; ++rep) {
    const auto mats = nearby_projectors(4, 2, 4, 0.1, rng);
    // global conjugation leaves the phase unchanged
    const CMat g = testing_support::random_unitary(4, rng);
    std::vector<CMat> moved;
    for (const auto& m : mats) moved.push_back(g * m * adjoint(g));
    const std::span<const CMat> all(mats);
    EXPECT_NEAR(triple_phase(all.first(3), 0.45), triple_phase(std::span<const CMat>(moved).first(3), 0.45), 1e-13);
    double sum = 0.0;
    for (int j = 0; j < 4; ++j) {
      std::vector<CMat> face;
      for (int i = 0; i < 4; ++i)
        if (i != j) face.push_back(mats[i]);
      sum += (j % 2 == 0 ? 1.0 : -1.0) * triple_phase(face, 0.45);
    }
    EXPECT_LT(std::abs(sum), 1e-10);
  }
  const std::vector<CMat> ranks = {line(0.0), line(0.1), CMat::diag({1.0, 1.0})};
  EXPECT_THROW(triple_phase(ranks, 0.45), Error);
}

TEST(TriplePhase, AgreesWithChernOnSmallTriangle) {
  // phi and Ch^2 differ by a coboundary; on a single small triangle both are
  // O(area) and agree to leading order
  std::mt19937_64 rng(11);
  const auto mats = nearby_projectors(2, 1, 3, 0.05, rng);
  const double phi = triple_phase(mats, 0.45);
  const cplx ch = ch_even(mats, 0.45, fixed(9, 2)).value;
  EXPECT_LT(std::abs(ch.imag()), 1e-14);
  EXPECT_LT(std::abs(phi - ch.real()), 0.05 * std::abs(phi) + 1e-12);
}

TEST(EvenTransgression, ConstantFamilyIsZero) {
  std::mt19937_64 rng(12);
  const auto mats = nearby_projectors(3, 1, 2, 0.1, rng);
  const std::vector<std::vector<CMat>> family(9, mats);
  for (cplx v : even_transgression(family, 0.45, fixed(7, 1))) EXPECT_LT(std::abs(v), 1e-15);
}

TEST(EvenTransgression, RotatingFamilyIdentity) {
  std::mt19937_64 rng(13);
  const auto mats = nearby_projectors(3, 1, 3, 0.15, rng);
  std::vector<CMat> gens;
  for (int j = 0; j < 3; ++j) {
    CMat g = random_hermitian(3, rng);
    g *= 1.0 / op_norm(g);
    gens.push_back(g);
  }
  const int steps = 65;
  std::vector<std::vector<CMat>> family;
  for (int g = 0; g < steps; ++g) {
    const double tau = static_cast<double>(g) / (steps - 1);
    std::vector<CMat> m;
    for (int j = 0; j < 3; ++j) {
      const CMat u = expm_i(gens[j], 0.3 * tau);
      m.push_back(u * mats[j] * adjoint(u));
    }
    family.push_back(m);
  }
  const QuadSpec q = fixed(9, 2);
  const cplx lhs = ch_even(family.back(), 0.45, q).value - ch_even(family.front(), 0.45, q).value;
  cplx rhs = 0.0;
  for (int j = 0; j < 3; ++j) {
    std::vector<std::vector<CMat>> face;
    for (const auto& m : family) {
      std::vector<CMat> f;
      for (int i = 0; i < 3; ++i)
        if (i != j) f.push_back(m[i]);
      face.push_back(f);
    }
    rhs += (j % 2 == 0 ? 1.0 : -1.0) * trapezoid(even_transgression(face, 0.45, q), 1.0 / (steps - 1));
  }
  EXPECT_GT(std::abs(lhs), 1e-5);
  EXPECT_LT(std::abs(lhs - rhs), 1e-6);
}

TEST(EvenTransgression, ConjugationKeepsBottPairing) {
  const Asset a = gen_bott_sphere(1);
  const Chain mu = fundamental_cycle(a.mesh);
  const auto family = conjugation_family(a, 5, 0.2, 3);
  const QuadSpec q = fixed(7, 2);
  const cplx first = pair(mu, bind(ch_even_cochain(2, a.sample.rho(), q), family.front()));
  for (const auto& s : family) EXPECT_LT(std::abs(pair(mu, bind(ch_even_cochain(2, s.rho(), q), s)) - first), 1e-6);
}
