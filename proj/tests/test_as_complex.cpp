#include <gtest/gtest.h>

#include <map>
#include <random>

#include "aschern/as_complex.hpp"
#include "aschern/error.hpp"
#include "aschern/geometry.hpp"

using namespace aschern;

namespace {

// A cochain given by a lookup table of random values keyed by the tuple,
// so every test below runs against arbitrary (non-smooth) data.
Cochain random_cochain(int degree, std::uint64_t seed) {
  auto table = std::make_shared<std::map<Tuple, cplx>>();
  auto rng = std::make_shared<std::mt19937_64>(seed);
  return Cochain(degree, 1.0, [table, rng](std::span<const PointId> t) {
    const Tuple key(t.begin(), t.end());
    auto it = table->find(key);
    if (it != table->end()) return it->second;
    std::normal_distribution<double> d;
    const cplx v(d(*rng), d(*rng));
    (*table)[key] = v;
    return v;
  });
}

Tuple random_tuple(std::size_t len, std::mt19937_64& rng) {
  Tuple t;
  for (std::size_t i = 0; i < len; ++i) t.push_back(static_cast<PointId>(rng() % 6));
  return t;
}

Chain random_chain(int degree, std::mt19937_64& rng) {
  std::vector<ChainTerm> terms;
  std::normal_distribution<double> d;
  for (int i = 0; i < 6; ++i) terms.push_back({cplx(d(rng), d(rng)), random_tuple(degree + 1, rng)});
  return Chain(degree, terms);
}

}  // namespace

TEST(Coboundary, ConstantZeroCochain) {
  const Cochain d = coboundary(constant_cochain(0, 2.5));
  EXPECT_EQ(d({3, 7}), cplx(0.0));
}

TEST(Coboundary, SquaresToZero) {
  std::mt19937_64 rng(1);
  for (int deg = 0; deg <= 3; ++deg) {
    const Cochain phi = random_cochain(deg, 10 + deg);
    const Cochain dd = coboundary(coboundary(phi));
    for (int rep = 0; rep < 20; ++rep) EXPECT_LT(std::abs(dd(random_tuple(deg + 3, rng))), 1e-13);
  }
}

TEST(Coboundary, TelescopingDifference) {
  const std::map<PointId, cplx> f = {{1, 0.3}, {2, cplx(1.0, -2.0)}, {3, 7.0}};
  const Cochain phi(1, 1.0, [&](std::span<const PointId> t) { return f.at(t[1]) - f.at(t[0]); });
  EXPECT_LT(std::abs(coboundary(phi)({1, 2, 3})), 1e-15);
  EXPECT_LT(std::abs(coboundary(phi)({3, 1, 2})), 1e-15);
}

TEST(Coboundary, WrongTupleLengthThrows) {
  const Cochain phi = constant_cochain(1, 1.0);
  EXPECT_THROW(phi({1, 2, 3}), Error);
}

TEST(Cup, UnitAndAssociativity) {
  std::mt19937_64 rng(4);
  const Cochain one = constant_cochain(0, 1.0);
  const Cochain psi = random_cochain(2, 5);
  const Cochain chi = random_cochain(1, 6);
  const Cochain phi = random_cochain(1, 7);
  for (int rep = 0; rep < 20; ++rep) {
    const Tuple t = random_tuple(3, rng);
    EXPECT_EQ(cup(one, psi)(t), psi(t));
    const Tuple u = random_tuple(5, rng);
    EXPECT_LT(std::abs(cup(cup(phi, psi), chi)(u) - cup(phi, cup(psi, chi))(u)), 1e-14);
  }
}

TEST(Cup, Leibniz) {
  std::mt19937_64 rng(8);
  for (int n = 0; n <= 2; ++n) {
    for (int m = 0; m <= 2; ++m) {
      const Cochain phi = random_cochain(n, 100 + n), psi = random_cochain(m, 200 + m);
      const Cochain lhs = coboundary(cup(phi, psi));
      const Cochain a = cup(coboundary(phi), psi), b = cup(phi, coboundary(psi));
      const double sign = n % 2 == 0 ? 1.0 : -1.0;
      for (int rep = 0; rep < 10; ++rep) {
        const Tuple t = random_tuple(n + m + 2, rng);
        EXPECT_LT(std::abs(lhs(t) - (a(t) + sign * b(t))), 1e-12);
      }
    }
  }
}

TEST(ChainBoundary, EdgeAndBoundaryOfBoundary) {
  const Chain e(1, {{1.0, {4, 9}}});
  const Chain b = chain_boundary(e);
  ASSERT_EQ(b.terms().size(), 2u);
  EXPECT_EQ(b.terms()[0].tuple, Tuple({4}));
  EXPECT_EQ(b.terms()[0].coeff, cplx(-1.0));
  EXPECT_EQ(b.terms()[1].tuple, Tuple({9}));
  EXPECT_EQ(b.terms()[1].coeff, cplx(1.0));

  std::mt19937_64 rng(2);
  for (int deg = 2; deg <= 4; ++deg) EXPECT_TRUE(is_cycle(chain_boundary(random_chain(deg, rng)), 1e-14).is_cycle);
}

TEST(ChainBoundary, ClosedTriangleLoopCancels) {
  const Chain loop(1, {{1.0, {1, 2}}, {1.0, {2, 3}}, {1.0, {3, 1}}});
  EXPECT_TRUE(chain_boundary(loop).empty());
}

TEST(Pair, EmptyAndSingle) {
  const Cochain phi = random_cochain(1, 3);
  EXPECT_EQ(pair(Chain(1), phi), cplx(0.0));
  EXPECT_EQ(pair(Chain(1, {{1.0, {2, 5}}}), phi), phi({2, 5}));
}

TEST(Pair, Adjointness) {
  std::mt19937_64 rng(12);
  for (int deg = 1; deg <= 3; ++deg) {
    const Chain mu = random_chain(deg, rng);
    const Cochain phi = random_cochain(deg - 1, 50 + deg);
    EXPECT_LT(std::abs(pair(chain_boundary(mu), phi) - pair(mu, coboundary(phi))), 1e-12);
  }
}

TEST(Pair, GapViolationIsAnError) {
  SampledMap s(SampleKind::Unitary, 1, 0.5);
  s.insert(0, CMat::diag({1.0}));
  s.insert(1, CMat::diag({-1.0}));
  const MatrixCochain phi{1, 0.5, [](std::span<const CMat>) { return cplx(1.0); }};
  EXPECT_THROW(pair(Chain(1, {{1.0, {0, 1}}}), bind(phi, s)), Error);
}

TEST(IsCycle, PolygonTriangleAndSphere) {
  std::vector<ChainTerm> poly;
  for (PointId i = 0; i < 7; ++i) poly.push_back({1.0, {i, (i + 1) % 7}});
  EXPECT_TRUE(is_cycle(Chain(1, poly), 0.0).is_cycle);
  const CycleReport tri = is_cycle(Chain(2, {{1.0, {0, 1, 2}}}), 0.0);
  EXPECT_FALSE(tri.is_cycle);
  EXPECT_EQ(tri.residual_terms, 3u);
  const Asset b = gen_bott_sphere(2);
  EXPECT_TRUE(is_cycle(fundamental_cycle(b.mesh), 0.0).is_cycle);
}

TEST(ChainAlgebra, MergeAndNegate) {
  const Chain a(1, {{1.0, {1, 2}}, {2.0, {1, 2}}});
  ASSERT_EQ(a.terms().size(), 1u);
  EXPECT_EQ(a.terms()[0].coeff, cplx(3.0));
  EXPECT_TRUE((a + (-a)).empty());
  EXPECT_EQ((cplx(2.0) * a).terms()[0].coeff, cplx(6.0));
}
