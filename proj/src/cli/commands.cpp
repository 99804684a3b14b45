#include "aschern/cli.hpp"

#include <chrono>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "aschern/error.hpp"
#include "aschern/parallel.hpp"
#include "aschern/suites.hpp"

namespace aschern {
namespace {

struct QuadFlags {
  int degree = 7;
  int subdiv = 0;
  double tol = 1e-9;

  QuadSpec spec() const {
    QuadSpec q;
    q.degree = degree;
    q.subdiv = subdiv;
    q.tol = tol;
    q.validate();
    return q;
  }
};

void add_gen_flags(CLI::App* app, GenParams& g) {
  app->add_option("--k", g.k, "winding / monopole charge");
  app->add_option("--m", g.m, "polygon size or torus grid (0 = default)");
  app->add_option("--level", g.level, "sphere subdivision level");
  app->add_option("--mass", g.mass, "two-band mass parameter");
  app->add_option("--wobble", g.wobble, "circle phase wobble along y");
}

void add_quad_flags(CLI::App* app, QuadFlags& q) {
  app->add_option("--quad-degree", q.degree, "simplex rule degree (odd)");
  app->add_option("--quad-subdiv", q.subdiv, "fixed refinement factor, 0 = adaptive");
  app->add_option("--quad-tol", q.tol, "adaptive tolerance");
}

Asset load_asset(const std::string& mesh_path, const std::string& sample_path, std::string& digest_text) {
  const json mj = read_json_file(mesh_path);
  const json sj = read_json_file(sample_path);
  Asset a;
  a.name = "files";
  a.mesh = mesh_from_json(mj);
  a.sample = sample_from_json(sj);
  for (const auto& [id, x] : a.mesh.vertices)
    if (!a.sample.contains(id)) fail(ErrorKind::InvalidInput, "sample has no matrix for vertex " + std::to_string(id));
  digest_text = mj.dump() + "\n" + sj.dump();
  return a;
}

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::SingularMatrix:
    case ErrorKind::IntegrandFailure:
      return 3;
    default:
      return 2;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Alexander-Spanier Chern character cocycles"};
  app.require_subcommand(1);

  std::string out_path;
  int threads = 1;
  std::uint64_t seed = 1;
  bool timings = false;
  QuadFlags qf;
  GenParams gen;

  auto* gen_cmd = app.add_subcommand("gen", "write a generated mesh and sample");
  gen_cmd->add_option("generator", gen.name, "circle | bott | monopole | su2 | torus")->required();
  add_gen_flags(gen_cmd, gen);
  gen_cmd->add_option("--out", out_path, "output prefix; writes <out>.mesh.json and <out>.sample.json")->required();

  std::string mesh_path, sample_path, cocycle;
  bool reverse = false;
  auto* pair_cmd = app.add_subcommand("pair", "pair a cocycle with the fundamental cycle");
  pair_cmd->add_option("--mesh", mesh_path)->required();
  pair_cmd->add_option("--sample", sample_path)->required();
  pair_cmd->add_option("--cocycle", cocycle, "ch1 | ch-odd:n | ch-even:n | phi")->required();
  pair_cmd->add_flag("--reverse", reverse, "use the reversed orientation");
  add_quad_flags(pair_cmd, qf);
  pair_cmd->add_option("--out", out_path, "also write the report here");

  std::string suite;
  std::string gen_name;
  std::vector<std::string> cocycles;
  SuiteOptions opt;
  auto* check_cmd = app.add_subcommand("check", "run a property suite");
  check_cmd->add_option("suite", suite, "cocycle | homotopy | derham | series | cross")
      ->required()
      ->check(CLI::IsMember({"cocycle", "homotopy", "derham", "series", "cross"}));
  check_cmd->add_option("--mesh", mesh_path);
  check_cmd->add_option("--sample", sample_path);
  check_cmd->add_option("--gen", gen_name, "use a generated asset instead of files");
  add_gen_flags(check_cmd, gen);
  check_cmd->add_option("--cocycle", cocycles, "restrict to these cochains");
  check_cmd->add_option("--count", opt.count, "random tuples for coboundary checks");
  check_cmd->add_option("--steps", opt.steps, "tau grid size for homotopies");
  check_cmd->add_option("--amplitude", opt.amplitude, "homotopy amplitude");
  check_cmd->add_option("--probes", opt.probes, "tangent probes for the de Rham suite");
  check_cmd->add_option("--rho", opt.series_rho, "gap of random projector triples");
  check_cmd->add_option("--K", opt.series_K, "series truncation order");
  check_cmd->add_option("--N", opt.series_N, "projector size for the series suite");
  check_cmd->add_option("--rank", opt.series_rank, "projector rank for the series suite");
  check_cmd->add_option("--samples", opt.series_samples, "projector triples for the series suite");
  check_cmd->add_option("--contour-nodes", opt.contour_nodes, "trapezoid nodes on the resolvent contour");
  add_quad_flags(check_cmd, qf);
  check_cmd->add_option("--out", out_path, "also write the report here");

  for (auto* sub : {pair_cmd, check_cmd}) {
    sub->add_option("--seed", seed, "seed for random tuples and families");
    sub->add_option("--threads", threads, "worker threads");
    sub->add_flag("--timings", timings, "include wall-clock timings in the report");
  }

  std::vector<std::string> reversed_args(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed_args));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    set_thread_count(threads);
    RunReport rep;
    if (gen_cmd->parsed()) {
      const Asset a = make_asset(gen);
      const json mj = to_json(a.mesh);
      const json sj = to_json(a.sample);
      write_json_file(out_path + ".mesh.json", mj);
      write_json_file(out_path + ".sample.json", sj);
      rep.command = "gen";
      rep.inputs_digest = digest(gen.describe());
      rep.results = {{"generator", gen.describe()},
                     {"mesh", out_path + ".mesh.json"},
                     {"sample", out_path + ".sample.json"},
                     {"vertices", a.mesh.vertices.size()},
                     {"simplices", a.mesh.simplices.size()},
                     {"max_simplex_gap", max_simplex_gap(a.mesh, a.sample)},
                     {"rho", a.sample.rho()}};
      rep.check_below("max simplex gap", max_simplex_gap(a.mesh, a.sample), a.sample.rho());
    } else if (pair_cmd->parsed()) {
      std::string text;
      const Asset a = load_asset(mesh_path, sample_path, text);
      const CocycleSpec spec = CocycleSpec::parse(cocycle);
      const PairingResult p = pair_fundamental(a, spec, qf.spec(), reverse);
      rep.command = "pair";
      rep.inputs_digest = digest(text + "\n" + spec.name() + (reverse ? " reversed" : ""));
      rep.seed = seed;
      rep.results = {{"cocycle", spec.name()},
                     {"value", to_json(p.value)},
                     {"integer_distance", p.integer_distance},
                     {"quad_estimate", p.quad_estimate ? json(*p.quad_estimate) : json(nullptr)},
                     {"max_subdiv", p.max_subdiv}};
      rep.check_below("integer distance", p.integer_distance, integer_tolerance(spec));
    } else {
      opt.quad = qf.spec();
      opt.seed = seed;
      for (const auto& c : cocycles) opt.cocycles.push_back(CocycleSpec::parse(c));
      std::optional<GenParams> gp;
      Asset a;
      std::string text;
      if (suite != "series") {
        if (!gen_name.empty()) {
          if (!mesh_path.empty() || !sample_path.empty())
            fail(ErrorKind::InvalidInput, "give either --gen or --mesh/--sample, not both");
          gen.name = gen_name;
          gp = gen;
          a = make_asset(gen);
          text = gen.describe();
        } else {
          if (mesh_path.empty() || sample_path.empty())
            fail(ErrorKind::InvalidInput, "suite '" + suite + "' needs --gen or both --mesh and --sample");
          a = load_asset(mesh_path, sample_path, text);
        }
      }
      if (suite == "cocycle") rep = suite_cocycle(a, opt);
      else if (suite == "homotopy") rep = suite_homotopy(a, opt);
      else if (suite == "derham") rep = suite_derham(a, opt);
      else if (suite == "series") rep = suite_series(opt);
      else rep = suite_cross(a, gp, opt);
      if (suite == "series") {
        std::ostringstream os;
        os << "series rho=" << opt.series_rho << " K=" << opt.series_K << " N=" << opt.series_N
           << " rank=" << opt.series_rank << " samples=" << opt.series_samples;
        text = os.str();
      }
      rep.inputs_digest = digest(text);
    }
    if (timings) {
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      rep.timings = {{"total_s", secs}, {"threads", thread_count()}};
    }
    const json report = rep.to_json();
    out << report.dump(2) << "\n";
    if (!out_path.empty() && !gen_cmd->parsed()) write_json_file(out_path, report);
    return rep.pass() ? 0 : 3;
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code(e.kind());
  }
}

}  // namespace aschern
