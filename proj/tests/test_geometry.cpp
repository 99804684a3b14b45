#include <gtest/gtest.h>

#include <numbers>

#include "aschern/chern_even.hpp"
#include "aschern/chern_odd.hpp"
#include "aschern/derham.hpp"
#include "aschern/error.hpp"
#include "aschern/geometry.hpp"

using namespace aschern;

namespace {

constexpr double kPi = std::numbers::pi;

double dist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

cplx pair_with(const Asset& a, const MatrixCochain& phi) {
  return pair(fundamental_cycle(a.mesh), bind(phi, a.sample));
}

QuadSpec fixed(int degree, int subdiv) {
  QuadSpec q;
  q.degree = degree;
  q.subdiv = subdiv;
  return q;
}

}  // namespace

TEST(CircleWinding, TelescopingPairings) {
  EXPECT_LT(std::abs(pair_with(gen_circle_winding(0, 12), ch1_closed_cochain(0.99))), 1e-15);
  EXPECT_LT(std::abs(pair_with(gen_circle_winding(1, 12), ch1_closed_cochain(0.99)) - 1.0), 1e-12);
  EXPECT_LT(std::abs(pair_with(gen_circle_winding(-2, 24), ch1_closed_cochain(0.99)) + 2.0), 1e-12);
  EXPECT_LT(std::abs(pair_with(gen_circle_winding(3, 40, 0.5), ch1_closed_cochain(0.99)) - 3.0), 1e-12);
}

TEST(CircleWinding, AdmissibilityBound) {
  EXPECT_NO_THROW(gen_circle_winding(3, 40));
  try {
    gen_circle_winding(3, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Admissibility);
  }
  EXPECT_THROW(gen_circle_winding(3, 18), Error);
}

TEST(BottSphere, EdgeDistancesCycleAndPairing) {
  const Asset a = gen_bott_sphere(2);
  for (const auto& s : a.mesh.simplices) {
    for (int i = 0; i < 3; ++i) {
      const PointId p = s[i], q = s[(i + 1) % 3];
      const double want = dist(a.mesh.vertices.at(p), a.mesh.vertices.at(q)) / 2.0;
      EXPECT_NEAR(op_norm(a.sample.at(p) - a.sample.at(q)), want, 1e-13);
    }
  }
  EXPECT_TRUE(is_cycle(fundamental_cycle(a.mesh), 0.0).is_cycle);
  EXPECT_NO_THROW(ProjectorSample check(a.sample));
  const cplx v = pair_with(a, ch_even_cochain(2, a.sample.rho(), QuadSpec{}));
  const cplx oracle = sphere2_form_integral(a.field, 64);
  EXPECT_LT(std::abs(std::abs(v) - 1.0), 1e-6);
  EXPECT_LT(std::abs(v - oracle), 1e-6);
  EXPECT_EQ(a.mesh.vertices.size(), 162u);
  EXPECT_EQ(a.mesh.simplices.size(), 320u);
}

TEST(Monopole, TraceEquivalenceAndCharge) {
  const Asset m1 = gen_monopole(1, 2);
  for (PointId id : m1.sample.ids()) EXPECT_NEAR(trace(m1.sample.at(id)).real(), 1.0, 1e-13);
  const QuadSpec q = fixed(7, 2);
  const cplx b = pair_with(gen_bott_sphere(2), ch_even_cochain(2, 0.49, q));
  EXPECT_LT(std::abs(pair_with(m1, ch_even_cochain(2, m1.sample.rho(), q)) - b), 1e-8);
  const Asset m2 = gen_monopole(2, 2);
  const cplx v2 = pair_with(m2, ch_even_cochain(2, m2.sample.rho(), QuadSpec{}));
  EXPECT_LT(std::abs(std::abs(v2) - 2.0), 1e-5);
  EXPECT_LT(std::abs(v2 - sphere2_form_integral(m2.field, 64)), 1e-5);
}

TEST(Su2Sphere, IsometryCycleAndDegree) {
  const Asset a = gen_su2_sphere3(2);
  for (const auto& s : a.mesh.simplices)
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j)
        EXPECT_NEAR(op_norm(a.sample.at(s[i]) - a.sample.at(s[j])),
                    dist(a.mesh.vertices.at(s[i]), a.mesh.vertices.at(s[j])), 1e-13);
  EXPECT_TRUE(is_cycle(fundamental_cycle(a.mesh), 0.0).is_cycle);
  EXPECT_NO_THROW(UnitarySample check(a.sample));
  const cplx v = pair_with(a, ch_odd_cochain(3, a.sample.rho(), fixed(7, 2)));
  const cplx oracle = sphere3_form_integral(a.field, 24);
  EXPECT_LT(std::abs(std::abs(oracle) - 1.0), 1e-8);
  EXPECT_LT(std::abs(v - oracle), 1e-3);
  EXPECT_THROW(gen_su2_sphere3(5), Error);
  EXPECT_THROW(gen_su2_sphere3(1), Error);
}

TEST(TwoBandTorus, PhasesAgainstLatticeOracle) {
  for (double mass : {-1.0, 1.0, 3.0}) {
    const Asset a = gen_two_band_torus(mass, 16);
    const cplx v = pair_with(a, ch_even_cochain(2, a.sample.rho(), QuadSpec{}));
    const cplx lat = lattice_chern_number([mass](double k1, double k2) { return two_band_projector(mass, k1, k2); }, 16);
    EXPECT_LT(std::abs(v - lat), 1e-6) << "mass " << mass;
    EXPECT_NEAR(std::abs(lat), mass == 3.0 ? 0.0 : 1.0, 1e-10);
  }
  EXPECT_THROW(gen_two_band_torus(2.0, 16), Error);
}

TEST(TwoBandTorus, GridRefinementInvariance) {
  const QuadSpec q;
  const Asset a = gen_two_band_torus(1.0, 16);
  const Asset b = gen_two_band_torus(1.0, 32);
  EXPECT_LT(std::abs(pair_with(a, ch_even_cochain(2, a.sample.rho(), q)) -
                     pair_with(b, ch_even_cochain(2, b.sample.rho(), q))),
            1e-8);
}

TEST(RandomTuples, SeededAndAdmissible) {
  const Asset a = gen_bott_sphere(1);
  const auto t1 = random_cluster_tuples(a.mesh, a.sample, a.sample.rho(), 4, 20, 5);
  const auto t2 = random_cluster_tuples(a.mesh, a.sample, a.sample.rho(), 4, 20, 5);
  EXPECT_EQ(t1, t2);
  for (const auto& t : t1) EXPECT_LT(max_pairwise_gap(a.sample.gather(t)), a.sample.rho());
  EXPECT_THROW(random_cluster_tuples(a.mesh, a.sample, a.sample.rho(), 30, 5, 1), Error);
}

TEST(Mesh, ValidationAndOrientationReversal) {
  Mesh m;
  m.dim = 1;
  m.vertices = {{0, {1.0, 0.0}}, {1, {0.0, 1.0}}};
  m.simplices = {{0, 1}};
  EXPECT_NO_THROW(validate_mesh(m));
  m.simplices = {{0, 2}};
  EXPECT_THROW(validate_mesh(m), Error);
  m.simplices = {{0, 1, 1}};
  EXPECT_THROW(validate_mesh(m), Error);

  const Asset a = gen_bott_sphere(1);
  const Chain mu = fundamental_cycle(a.mesh), rev = fundamental_cycle(a.mesh, true);
  EXPECT_TRUE((mu + rev).empty());
}

TEST(LambdaMap, ConstantCochainAndCircleForm) {
  const Asset a = gen_circle_winding(2, 24);
  const MatrixCochain zero{1, 0.99, [](std::span<const CMat>) { return cplx(0.0); }};
  const TangentProbe p = sphere_probe({1.0, 0.0}, {{0.0, 1.0}});
  EXPECT_EQ(lambda_map(zero, a.field, p, 0.1), cplx(0.0));
  const double theta = 0.7;
  const TangentProbe q = sphere_probe({std::cos(theta), std::sin(theta)}, {{-std::sin(theta), std::cos(theta)}});
  const std::vector<std::vector<double>> tangents = {{-std::sin(theta), std::cos(theta)}};
  EXPECT_LT(std::abs(analytic_form_odd(a.field, q.base, tangents) - 2.0 / (2 * kPi)), 1e-14);
  EXPECT_LT(std::abs(lambda_map(ch1_closed_cochain(0.99), a.field, q, 0.05) - 2.0 / (2 * kPi)), 1e-12);
}

TEST(LambdaMap, SecondOrderOnWobbledCircle) {
  const Asset a = gen_circle_winding(1, 24, 0.5);
  const auto probes = random_probes(a, 1, 3, 2);
  const MatrixCochain phi = ch1_closed_cochain(0.99);
  for (const auto& p : probes) {
    const cplx l1 = lambda_map(phi, a.field, p, 0.1);
    const cplx l2 = lambda_map(phi, a.field, p, 0.05);
    const cplx l3 = lambda_map(phi, a.field, p, 0.025);
    const double ratio = std::abs(l1 - l2) / std::abs(l2 - l3);
    EXPECT_GT(ratio, 3.5);
    EXPECT_LT(ratio, 4.5);
  }
}

TEST(AnalyticForm, RepeatedTangentVanishes) {
  const Asset a = gen_bott_sphere(1);
  const std::vector<double> x = {0.0, 0.6, 0.8};
  const std::vector<std::vector<double>> same = {{1.0, 0.0, 0.0}, {1.0, 0.0, 0.0}};
  EXPECT_LT(std::abs(analytic_form_even(a.field, x, same)), 1e-15);
}

TEST(DerhamConvergence, CircleBottAndConstant) {
  const std::vector<double> steps = {0.1, 0.05, 0.025};
  const Asset c = gen_circle_winding(1, 24, 0.5);
  const auto pc = random_probes(c, 1, 4, 1);
  const DerhamReport rc = derham_convergence(ch1_closed_cochain(0.99), c.field, pc, steps);
  EXPECT_TRUE(rc.monotone);
  EXPECT_GE(rc.min_order, 1.0);
  EXPECT_TRUE(rc.pass);

  const Asset b = gen_bott_sphere(1);
  const auto pb = random_probes(b, 2, 3, 1);
  const DerhamReport rb = derham_convergence(ch_even_cochain(2, 0.49, QuadSpec{}), b.field, pb, steps);
  EXPECT_TRUE(rb.pass);
  EXPECT_GE(rb.min_order, 1.0);

  Field constant = b.field;
  constant.value = [](std::span<const double>) { return CMat::diag({1.0, 0.0}); };
  constant.derivative = [](std::span<const double>, std::span<const double>) { return CMat(2); };
  const DerhamReport r0 = derham_convergence(ch_even_cochain(2, 0.49, QuadSpec{}), constant, pb, steps);
  for (double e : r0.errors) EXPECT_LT(e, 1e-12);
  EXPECT_TRUE(r0.pass);
}

TEST(DenseOracles, GaussLegendreAndIntegrals) {
  std::vector<double> x, w;
  gauss_legendre(8, -1.0, 2.0, x, w);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += w[i] * std::pow(x[i], 15);
  EXPECT_NEAR(s, (std::pow(2.0, 16) - 1.0) / 16.0, 1e-9);

  EXPECT_LT(std::abs(circle_form_integral(gen_circle_winding(-2, 24, 0.3).field, 256) + 2.0), 1e-12);
  EXPECT_LT(std::abs(std::abs(sphere2_form_integral(gen_monopole(3, 2).field, 64)) - 3.0), 1e-9);
}
