#include "aschern/suites.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <iomanip>
#include <random>
#include <sstream>

#include "aschern/chern_even.hpp"
#include "aschern/chern_odd.hpp"
#include "aschern/derham.hpp"
#include "aschern/error.hpp"
#include "aschern/forms.hpp"
#include "aschern/parallel.hpp"

namespace aschern {

bool RunReport::check_below(const std::string& name, double value, double tol) {
  const bool ok = value < tol;
  checks.push_back({name, value, tol, "<", ok});
  return ok;
}

bool RunReport::check_at_most(const std::string& name, double value, double tol) {
  const bool ok = value <= tol;
  checks.push_back({name, value, tol, "<=", ok});
  return ok;
}

bool RunReport::check_at_least(const std::string& name, double value, double bound) {
  const bool ok = value >= bound;
  checks.push_back({name, value, bound, ">=", ok});
  return ok;
}

bool RunReport::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

}  // namespace

json RunReport::to_json() const {
  json j;
  j["command"] = command;
  j["inputs_digest"] = inputs_digest;
  j["seed"] = seed ? json(*seed) : json(nullptr);
  json cs = json::array();
  for (const auto& c : checks)
    cs.push_back({{"name", c.name},
                  {"value", number(c.value)},
                  {"tolerance", number(c.tolerance)},
                  {"relation", c.relation},
                  {"pass", c.pass}});
  j["checks"] = cs;
  j["results"] = results;
  j["pass"] = pass();
  if (!timings.is_null()) j["timings"] = timings;
  return j;
}

std::string GenParams::describe() const {
  std::ostringstream out;
  out << std::setprecision(17) << name;
  if (name == "circle") out << " k=" << k << " m=" << m << " wobble=" << wobble;
  if (name == "bott" || name == "su2") out << " level=" << level;
  if (name == "monopole") out << " k=" << k << " level=" << level;
  if (name == "torus") out << " mass=" << mass << " m=" << m;
  return out.str();
}

Asset make_asset(const GenParams& p) {
  if (p.name == "circle") return gen_circle_winding(p.k, p.m > 0 ? p.m : 24, p.wobble);
  if (p.name == "bott") return gen_bott_sphere(p.level);
  if (p.name == "monopole") return gen_monopole(p.k, p.level);
  if (p.name == "su2") return gen_su2_sphere3(p.level);
  if (p.name == "torus") return gen_two_band_torus(p.mass, p.m > 0 ? p.m : 32);
  fail(ErrorKind::InvalidInput, "unknown generator '" + p.name + "' (circle, bott, monopole, su2, torus)");
}

GenParams refined(const GenParams& p) {
  GenParams r = p;
  if (p.name == "circle") r.m = 2 * (p.m > 0 ? p.m : 24);
  else if (p.name == "torus") r.m = 2 * (p.m > 0 ? p.m : 32);
  else r.level = p.level + 1;
  return r;
}

CocycleSpec CocycleSpec::parse(const std::string& text) {
  CocycleSpec s;
  const auto degree_of = [&](const std::string& prefix) {
    const std::string rest = text.substr(prefix.size());
    std::size_t used = 0;
    int d = 0;
    try {
      d = std::stoi(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (rest.empty() || used != rest.size()) fail(ErrorKind::InvalidInput, "bad cocycle degree in '" + text + "'");
    return d;
  };
  if (text == "ch1") {
    s.kind = Kind::Ch1;
    s.degree = 1;
  } else if (text == "phi") {
    s.kind = Kind::Phi;
    s.degree = 2;
  } else if (text.rfind("ch-odd:", 0) == 0) {
    s.kind = Kind::ChOdd;
    s.degree = degree_of("ch-odd:");
    if (s.degree < 1 || s.degree % 2 == 0) fail(ErrorKind::Domain, "ch-odd needs an odd degree");
  } else if (text.rfind("ch-even:", 0) == 0) {
    s.kind = Kind::ChEven;
    s.degree = degree_of("ch-even:");
    if (s.degree < 2 || s.degree % 2 != 0) fail(ErrorKind::Domain, "ch-even needs an even degree >= 2");
  } else {
    fail(ErrorKind::InvalidInput, "unknown cocycle '" + text + "' (ch1, ch-odd:n, ch-even:n, phi)");
  }
  return s;
}

std::string CocycleSpec::name() const {
  switch (kind) {
    case Kind::Ch1: return "ch1";
    case Kind::Phi: return "phi";
    case Kind::ChOdd: return "ch-odd:" + std::to_string(degree);
    case Kind::ChEven: return "ch-even:" + std::to_string(degree);
  }
  return "";
}

MatrixCochain make_cochain(const CocycleSpec& spec, double rho, const QuadSpec& quad) {
  switch (spec.kind) {
    case CocycleSpec::Kind::Ch1: return ch1_closed_cochain(rho);
    case CocycleSpec::Kind::Phi: return triple_phase_cochain(rho);
    case CocycleSpec::Kind::ChOdd: return ch_odd_cochain(spec.degree, rho, quad);
    case CocycleSpec::Kind::ChEven: return ch_even_cochain(spec.degree, rho, quad);
  }
  fail(ErrorKind::InvalidInput, "unknown cocycle kind");
}

std::vector<CocycleSpec> default_cocycles(const Asset& asset) {
  const int d = asset.mesh.dim;
  if (asset.sample.kind() == SampleKind::Unitary) {
    if (d == 1) return {CocycleSpec::parse("ch1"), CocycleSpec::parse("ch-odd:1")};
    if (d % 2 == 1) return {CocycleSpec::parse("ch-odd:" + std::to_string(d))};
  } else {
    if (d == 2) return {CocycleSpec::parse("ch-even:2"), CocycleSpec::parse("phi")};
    if (d % 2 == 0) return {CocycleSpec::parse("ch-even:" + std::to_string(d))};
  }
  fail(ErrorKind::InvalidInput, "no Chern cochain matches this sample kind and mesh dimension");
}

double cocycle_tolerance(const CocycleSpec& spec) {
  if (spec.kind == CocycleSpec::Kind::Phi) return 1e-10;
  if (spec.degree == 1) return 1e-8;
  if (spec.degree == 2) return 1e-7;
  return 1e-5;
}

double integer_tolerance(const CocycleSpec& spec) {
  if (spec.kind == CocycleSpec::Kind::Ch1) return 1e-12;
  if (spec.degree == 1) return 1e-9;
  if (spec.degree == 2) return 1e-6;
  return 1e-3;
}

namespace {

void require_matching(const Asset& asset, const CocycleSpec& spec) {
  if (spec.degree != asset.mesh.dim) {
    std::ostringstream msg;
    msg << "cocycle " << spec.name() << " has degree " << spec.degree << " but the mesh has dimension "
        << asset.mesh.dim;
    fail(ErrorKind::InvalidInput, msg.str());
  }
  const bool unitary = asset.sample.kind() == SampleKind::Unitary;
  const bool wants_unitary = spec.kind == CocycleSpec::Kind::Ch1 || spec.kind == CocycleSpec::Kind::ChOdd;
  if (unitary != wants_unitary)
    fail(ErrorKind::InvalidInput, "cocycle " + spec.name() + " does not match the sample kind");
}

QuadResult evaluate(const CocycleSpec& spec, std::span<const CMat> mats, double rho, const QuadSpec& quad) {
  switch (spec.kind) {
    case CocycleSpec::Kind::Ch1: return {ch1_closed(mats[0], mats[1], rho), 1, 0.0};
    case CocycleSpec::Kind::Phi: return {triple_phase(mats, rho), 1, 0.0};
    case CocycleSpec::Kind::ChOdd: return ch_odd(mats, rho, quad);
    case CocycleSpec::Kind::ChEven: return ch_even(mats, rho, quad);
  }
  fail(ErrorKind::InvalidInput, "unknown cocycle kind");
}

std::vector<CocycleSpec> cocycles_for(const Asset& asset, const SuiteOptions& opt) {
  return opt.cocycles.empty() ? default_cocycles(asset) : opt.cocycles;
}

cplx pairing(const Asset& asset, const SampledMap& sample, const CocycleSpec& spec, const QuadSpec& quad,
             bool reversed = false) {
  const Chain mu = fundamental_cycle(asset.mesh, reversed);
  return pair(mu, bind(make_cochain(spec, sample.rho(), quad), sample));
}

std::vector<CMat> drop(const std::vector<CMat>& mats, std::size_t j) {
  std::vector<CMat> out;
  for (std::size_t i = 0; i < mats.size(); ++i)
    if (i != j) out.push_back(mats[i]);
  return out;
}

// max over tuples of |Ch_1 - Ch_0 - d int T| along a family
double transgression_defect(const std::vector<SampledMap>& family, const std::vector<Tuple>& tuples,
                            const CocycleSpec& spec, const QuadSpec& quad) {
  const int n = spec.degree;
  const double rho = family.front().rho();
  const double h = 1.0 / static_cast<double>(family.size() - 1);
  const bool odd = spec.kind == CocycleSpec::Kind::Ch1 || spec.kind == CocycleSpec::Kind::ChOdd;
  double worst = 0.0;
  for (const Tuple& t : tuples) {
    std::vector<std::vector<CMat>> mats;
    for (const auto& m : family) mats.push_back(m.gather(t));
    const cplx lhs = evaluate(spec, mats.back(), rho, quad).value - evaluate(spec, mats.front(), rho, quad).value;
    cplx rhs = 0.0;
    for (int j = 0; j <= n; ++j) {
      std::vector<std::vector<CMat>> face;
      for (const auto& ms : mats) face.push_back(drop(ms, j));
      const std::vector<cplx> T = odd ? odd_transgression(face, rho, quad) : even_transgression(face, rho, quad);
      const cplx integral = trapezoid(T, h);
      rhs += (j % 2 == 0) ? integral : -integral;
    }
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  return worst;
}

std::vector<CMat> random_unitary_like(std::size_t n, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> normal;
  CMat h(n);
  for (std::size_t r = 0; r < n; ++r) {
    h(r, r) = normal(rng);
    for (std::size_t c = r + 1; c < n; ++c) {
      h(r, c) = cplx(normal(rng), normal(rng));
      h(c, r) = std::conj(h(r, c));
    }
  }
  h *= 1.0 / op_norm(h);
  return {h, unitary_exp(h, scale)};
}

}  // namespace

PairingResult pair_fundamental(const Asset& asset, const CocycleSpec& spec, const QuadSpec& quad, bool reversed) {
  require_matching(asset, spec);
  quad.validate();
  const Chain mu = fundamental_cycle(asset.mesh, reversed);
  const double rho = asset.sample.rho();
  const auto& terms = mu.terms();
  const std::vector<QuadResult> parts = parallel_map<QuadResult>(terms.size(), [&](std::size_t i) {
    const auto mats = asset.sample.gather(terms[i].tuple);
    try {
      return evaluate(spec, mats, rho, quad);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Gap && e.kind() != ErrorKind::SpectralGap) throw;
      throw Error(e.kind(), std::string(e.what()) + " on tuple " + format_tuple(terms[i].tuple));
    }
  });
  std::vector<cplx> values;
  std::vector<double> estimates;
  PairingResult r;
  bool has_estimate = false;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    values.push_back(terms[i].coeff * parts[i].value);
    if (parts[i].error_estimate) {
      estimates.push_back(std::abs(terms[i].coeff) * *parts[i].error_estimate);
      has_estimate = true;
    }
    r.max_subdiv = std::max(r.max_subdiv, parts[i].subdiv);
  }
  r.value = pairwise_sum(values);
  r.integer_distance = std::abs(r.value - cplx(std::round(r.value.real()), 0.0));
  if (has_estimate) r.quad_estimate = pairwise_sum(estimates);
  if (spec.kind == CocycleSpec::Kind::Ch1 || spec.kind == CocycleSpec::Kind::Phi) r.quad_estimate = 0.0;
  return r;
}

RunReport suite_cocycle(const Asset& asset, const SuiteOptions& opt) {
  RunReport rep;
  rep.command = "check cocycle";
  rep.seed = opt.seed;
  for (const auto& spec : cocycles_for(asset, opt)) {
    require_matching(asset, spec);
    const MatrixCochain phi = make_cochain(spec, asset.sample.rho(), opt.quad);
    const Cochain d = coboundary(bind(phi, asset.sample));
    const auto tuples =
        random_cluster_tuples(asset.mesh, asset.sample, asset.sample.rho(), spec.degree + 2, opt.count, opt.seed);
    const std::vector<double> residuals =
        parallel_map<double>(tuples.size(), [&](std::size_t i) { return std::abs(d(tuples[i])); });
    double worst = 0.0;
    for (double r : residuals) worst = std::max(worst, r);
    rep.results[spec.name()] = {{"tuples", tuples.size()}, {"max_residual", worst}};
    rep.check_below("coboundary " + spec.name(), worst, cocycle_tolerance(spec));
  }
  return rep;
}

RunReport suite_homotopy(const Asset& asset, const SuiteOptions& opt) {
  RunReport rep;
  rep.command = "check homotopy";
  rep.seed = opt.seed;
  const auto family = conjugation_family(asset, opt.steps, opt.amplitude, opt.seed);
  std::vector<SampledMap> moved;
  if (asset.sample.kind() == SampleKind::Unitary)
    moved = multiplication_family(asset, opt.steps, opt.amplitude, opt.seed);
  for (const auto& spec : cocycles_for(asset, opt)) {
    require_matching(asset, spec);
    double spread = 0.0;
    cplx first = 0.0;
    for (std::size_t g = 0; g < family.size(); ++g) {
      const cplx v = pairing(asset, family[g], spec, opt.quad);
      if (g == 0) first = v;
      spread = std::max(spread, std::abs(v - first));
    }
    rep.results[spec.name()]["pairing_tau0"] = to_json(first);
    rep.results[spec.name()]["pairing_spread"] = spread;
    rep.check_below("pairing spread along conjugation " + spec.name(), spread, 1e-6);
    if (spec.kind == CocycleSpec::Kind::Phi) continue;

    const auto tuples = random_cluster_tuples(asset.mesh, asset.sample, asset.sample.rho(), spec.degree + 1,
                                              opt.transgression_tuples, opt.seed + 1);
    const double conj = transgression_defect(family, tuples, spec, opt.quad);
    rep.results[spec.name()]["transgression_conjugation"] = conj;
    rep.check_below("transgression along conjugation " + spec.name(), conj, 1e-6);
    if (!moved.empty()) {
      const double mult = transgression_defect(moved, tuples, spec, opt.quad);
      rep.results[spec.name()]["transgression_multiplication"] = mult;
      rep.check_below("transgression along multiplication " + spec.name(), mult, 1e-6);
    }
  }
  return rep;
}

RunReport suite_derham(const Asset& asset, const SuiteOptions& opt) {
  RunReport rep;
  rep.command = "check derham";
  rep.seed = opt.seed;
  if (!asset.field.value || !asset.field.derivative)
    fail(ErrorKind::Capability, "the de Rham suite needs a generator asset with closed-form derivatives");
  const auto probes = random_probes(asset, asset.mesh.dim, opt.probes, opt.seed);
  for (const auto& spec : cocycles_for(asset, opt)) {
    if (spec.kind == CocycleSpec::Kind::Phi) continue;
    require_matching(asset, spec);
    const DerhamReport r = derham_convergence(make_cochain(spec, asset.sample.rho(), opt.quad), asset.field,
                                              probes, opt.steps_h);
    json table = json::array();
    for (std::size_t i = 0; i < r.steps.size(); ++i) table.push_back({{"h", r.steps[i]}, {"max_error", r.errors[i]}});
    rep.results[spec.name()] = {{"table", table}, {"orders", r.orders}};
    double largest = 0.0, worst_ratio = 0.0;
    for (std::size_t i = 0; i < r.errors.size(); ++i) {
      largest = std::max(largest, r.errors[i]);
      if (i > 0) worst_ratio = std::max(worst_ratio, r.errors[i] / r.errors[i - 1]);
    }
    if (largest < 1e-12) {
      rep.check_below("lambda error vanishes " + spec.name(), largest, 1e-12);
    } else {
      rep.check_below("lambda error ratio between steps " + spec.name(), worst_ratio, 1.0);
      rep.check_at_least("lambda observed order " + spec.name(), r.min_order, 1.0);
    }
  }
  return rep;
}

std::vector<CMat> random_projector_triple(int N, int rank, double rho, std::uint64_t seed) {
  if (N < 2 || rank < 1 || rank >= N) fail(ErrorKind::InvalidInput, "projector triple needs 1 <= rank < N");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> target(0.7 * rho, 0.99 * rho);
  std::vector<double> d(static_cast<std::size_t>(N), 0.0);
  for (int i = 0; i < rank; ++i) d[i] = 1.0;
  const std::vector<cplx> dc(d.begin(), d.end());
  const CMat g = random_unitary_like(N, rng, 2.0)[1];
  const CMat e0 = g * CMat::diag(dc) * adjoint(g);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<CMat> mats = {e0};
    for (int j = 0; j < 2; ++j) {
      const CMat h = random_unitary_like(N, rng, 0.0)[0];
      const double want = target(rng);
      double s = 0.1;
      CMat e;
      for (int it = 0; it < 60; ++it) {
        const CMat u = unitary_exp(h, s);
        e = u * e0 * adjoint(u);
        const double gap = op_norm(e - e0);
        if (gap == 0.0) break;
        s *= want / gap;
      }
      mats.push_back(e);
    }
    if (max_pairwise_gap(mats) < rho) return mats;
  }
  fail(ErrorKind::Admissibility, "could not draw an admissible projector triple");
}

RunReport suite_series(const SuiteOptions& opt) {
  RunReport rep;
  rep.command = "check series";
  rep.seed = opt.seed;
  if (opt.series_K < 2) fail(ErrorKind::InvalidInput, "series suite needs K >= 2");
  double worst_ratio = 0.0, worst_final = 0.0, worst_contour = 0.0;
  bool monotone = true;
  json samples = json::array();
  for (int s = 0; s < opt.series_samples; ++s) {
    const auto mats = random_projector_triple(opt.series_N, opt.series_rank, opt.series_rho, opt.seed + s);
    const EvenPath path = even_path(mats, opt.series_rho);
    const std::vector<double> t(mats.size(), 1.0 / static_cast<double>(mats.size()));
    const CMat exact = spectral_projector(path.at(t));
    std::vector<double> errs;
    for (int K = 0; K <= opt.series_K; ++K) errs.push_back(op_norm(projector_series(path, t, K) - exact));
    for (int K = 1; K <= opt.series_K; ++K) monotone = monotone && errs[K] < errs[K - 1];
    const double ratio = std::pow(errs[opt.series_K] / errs[1], 1.0 / (opt.series_K - 1));
    const double contour = op_norm(spectral_projector_contour(path.at(t), opt.contour_nodes) - exact);
    worst_ratio = std::max(worst_ratio, ratio);
    worst_final = std::max(worst_final, errs[opt.series_K]);
    worst_contour = std::max(worst_contour, contour);
    samples.push_back({{"gap", max_pairwise_gap(mats)},
                       {"delta_norm", op_norm(path.delta(t))},
                       {"errors", errs},
                       {"ratio", ratio},
                       {"contour_error", contour}});
  }
  rep.results["samples"] = samples;
  rep.results["evaluation_point"] = "barycenter";
  rep.check_at_most("series errors decrease in K", monotone ? 0.0 : 1.0, 0.0);
  rep.check_at_most("series geometric ratio", worst_ratio, 0.45);
  rep.check_below("series error at K=" + std::to_string(opt.series_K), worst_final, 1e-4);
  rep.check_below("contour vs eigen projector at " + std::to_string(opt.contour_nodes) + " nodes", worst_contour,
                  1e-10);
  return rep;
}

RunReport suite_cross(const Asset& asset, const std::optional<GenParams>& gen, const SuiteOptions& opt) {
  RunReport rep;
  rep.command = "check cross";
  rep.seed = opt.seed;
  const auto specs = cocycles_for(asset, opt);
  std::map<std::string, cplx> values;
  for (const auto& spec : specs) {
    const PairingResult p = pair_fundamental(asset, spec, opt.quad);
    values[spec.name()] = p.value;
    rep.results[spec.name()]["pairing"] = to_json(p.value);
    rep.check_below("integer distance " + spec.name(), p.integer_distance, integer_tolerance(spec));
    const PairingResult rev = pair_fundamental(asset, spec, opt.quad, true);
    rep.check_at_most("orientation reversal negates " + spec.name(), std::abs(rev.value + p.value), 0.0);

    std::mt19937_64 rng(opt.seed);
    const CMat g = random_unitary_like(asset.sample.N(), rng, 1.0)[1];
    Asset turned = asset;
    turned.sample = SampledMap(asset.sample.kind(), asset.sample.N(), asset.sample.rho());
    for (PointId id : asset.sample.ids()) turned.sample.insert(id, g * asset.sample.at(id) * adjoint(g));
    const cplx conj = pair_fundamental(turned, spec, opt.quad).value;
    rep.check_below("global conjugation " + spec.name(), std::abs(conj - p.value), 1e-10);

    if (gen) {
      const Asset fine = make_asset(refined(*gen));
      const cplx v = pair_fundamental(fine, spec, opt.quad).value;
      rep.results[spec.name()]["refined_pairing"] = to_json(v);
      rep.check_below("refinement invariance " + spec.name(), std::abs(v - p.value), 1e-6);
    }
  }
  if (values.count("ch1") && values.count("ch-odd:1")) {
    QuadSpec q13 = opt.quad;
    q13.degree = 13;
    const cplx v = pair_fundamental(asset, CocycleSpec::parse("ch-odd:1"), q13).value;
    rep.check_below("closed form vs degree-13 quadrature ch1", std::abs(v - values["ch1"]), 1e-9);
  }
  if (values.count("phi") && values.count("ch-even:2"))
    rep.check_below("phi vs ch-even:2", std::abs(values["phi"] - values["ch-even:2"]), 1e-5);

  if (asset.field.value && asset.field.derivative && !specs.empty()) {
    const auto& spec = specs.front();
    const std::size_t amb = asset.mesh.ambient_dim();
    std::optional<cplx> oracle;
    if (asset.mesh.dim == 1 && amb == 2) oracle = circle_form_integral(asset.field, 512);
    if (asset.mesh.dim == 2 && amb == 3) oracle = sphere2_form_integral(asset.field, 64);
    if (asset.mesh.dim == 3 && amb == 4) oracle = sphere3_form_integral(asset.field, 24);
    if (oracle) {
      rep.results["derham_oracle"] = to_json(*oracle);
      rep.check_below("dense de Rham oracle " + spec.name(), std::abs(*oracle - values[spec.name()]),
                      integer_tolerance(spec));
    }
  }
  if (gen && gen->name == "torus") {
    const double mass = gen->mass;
    const cplx lat = lattice_chern_number([mass](double a, double b) { return two_band_projector(mass, a, b); },
                                          gen->m > 0 ? gen->m : 32);
    rep.results["lattice_oracle"] = to_json(lat);
    rep.check_below("lattice Chern oracle ch-even:2", std::abs(lat - values["ch-even:2"]), 1e-6);
  }
  return rep;
}

}  // namespace aschern
