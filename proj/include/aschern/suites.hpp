#pragma once

// Property suites shared by the command-line front end and the acceptance
// tests. Every numeric claim lands in a RunReport together with its tolerance.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aschern/json_io.hpp"
#include "aschern/simplex_quad.hpp"

namespace aschern {

struct CheckRecord {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  std::string relation;  // "<", "<=" or ">="
  bool pass = false;
};

class RunReport {
 public:
  std::string command;
  std::string inputs_digest;
  std::optional<std::uint64_t> seed;
  std::vector<CheckRecord> checks;
  json results = json::object();
  json timings;  // null unless requested

  /// Records value < tol; NaN fails.
  bool check_below(const std::string& name, double value, double tol);
  bool check_at_most(const std::string& name, double value, double tol);
  bool check_at_least(const std::string& name, double value, double bound);

  bool pass() const;
  json to_json() const;
};

struct GenParams {
  std::string name;  // circle, bott, monopole, su2, torus
  int k = 1;
  int m = 0;  // 0 picks the generator's default
  int level = 2;
  double mass = 1.0;
  double wobble = 0.0;

  /// Canonical text form, also used for the inputs digest.
  std::string describe() const;
};

Asset make_asset(const GenParams& p);

/// The same generator one refinement step finer (level + 1, or m doubled).
GenParams refined(const GenParams& p);

struct CocycleSpec {
  enum class Kind { Ch1, ChOdd, ChEven, Phi } kind = Kind::Ch1;
  int degree = 1;

  /// Parses ch1 | ch-odd:n | ch-even:n | phi.
  static CocycleSpec parse(const std::string& text);
  std::string name() const;
};

MatrixCochain make_cochain(const CocycleSpec& spec, double rho, const QuadSpec& quad);

/// Cochains checked by default on an asset: Ch^1 (closed form and
/// quadrature) on circles, Ch^3 on S^3, Ch^2 and the triple phase on surfaces.
std::vector<CocycleSpec> default_cocycles(const Asset& asset);

struct PairingResult {
  cplx value;
  double integer_distance = 0.0;
  std::optional<double> quad_estimate;  // sum of |coeff| * per-simplex estimates
  int max_subdiv = 0;
};

/// Pairs with the fundamental cycle; the value is bitwise the one returned by
/// pair(mu, bind(make_cochain(...), sample)).
PairingResult pair_fundamental(const Asset& asset, const CocycleSpec& spec, const QuadSpec& quad,
                               bool reversed = false);

/// Tolerances tied to the cochain degree.
double cocycle_tolerance(const CocycleSpec& spec);
double integer_tolerance(const CocycleSpec& spec);

struct SuiteOptions {
  QuadSpec quad;
  std::uint64_t seed = 1;
  int count = 50;       // random tuples for coboundary checks
  int steps = 65;       // tau grid for homotopies
  double amplitude = 0.05;
  int transgression_tuples = 3;
  std::vector<double> steps_h = {0.1, 0.05, 0.025};
  int probes = 5;
  double series_rho = 0.3;
  int series_K = 10;
  int series_N = 4;
  int series_rank = 2;
  int series_samples = 5;
  int contour_nodes = 64;
  std::vector<CocycleSpec> cocycles;  // empty: default_cocycles
};

RunReport suite_cocycle(const Asset& asset, const SuiteOptions& opt);
RunReport suite_homotopy(const Asset& asset, const SuiteOptions& opt);
RunReport suite_derham(const Asset& asset, const SuiteOptions& opt);
RunReport suite_series(const SuiteOptions& opt);
RunReport suite_cross(const Asset& asset, const std::optional<GenParams>& gen, const SuiteOptions& opt);

/// Seeded random tuple of three projectors of size N and rank r whose
/// pairwise gaps lie below rho, each near rho / 2 away from the first.
std::vector<CMat> random_projector_triple(int N, int rank, double rho, std::uint64_t seed);

}  // namespace aschern
