// Command-line front end: bounds tables, family constructions, verification,
// packing certificates, exact search, and Monte-Carlo experiments.
//
// Exit codes: 0 success/verified, 1 verification failure, 2 usage error,
// 3 search budget exhausted.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "subcubes/bounds.hpp"
#include "subcubes/certificates.hpp"
#include "subcubes/codes.hpp"
#include "subcubes/constructions.hpp"
#include "subcubes/cube.hpp"
#include "subcubes/io.hpp"
#include "subcubes/search.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

using nlohmann::json;
using namespace subcubes;

constexpr int exit_ok = 0;
constexpr int exit_verification_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

std::string sig6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

json rational_json(const BigRat& r) {
  return json{{"num", numerator(r).str()}, {"den", denominator(r).str()}};
}

void apply_threads(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

double parse_p(const std::string& text, int n, int k) {
  if (text == "optimal") return optimal_p(n, k);
  std::size_t used = 0;
  double v = std::stod(text, &used);
  if (used != text.size())
    throw std::invalid_argument("bad probability '" + text + "'");
  return v;
}

// ---------------------------------------------------------------- bounds --

int cmd_bounds(int n, int k, int grid_m, bool as_json) {
  BoundsReport r = bounds_report(n, k);
  json j{
      {"n", r.n},
      {"k", r.k},
      {"ah", r.ah.str()},
      {"meshulam", rational_json(r.meshulam)},
      {"meshulam_approx", rational_double(r.meshulam)},
      {"meshulam_floor", r.meshulam_floor.str()},
      {"beta", rational_json(r.beta)},
      {"beta_approx", rational_double(r.beta)},
      {"eta", rational_json(r.eta)},
      {"eta_approx", rational_double(r.eta)},
      {"random_lower", r.random_lower},
      {"t_opt", r.t_opt},
      {"ratio_g", r.ratio_g},
      {"equality_n_2k_plus_1", r.equality_n_2k_plus_1},
      {"perfect_code_case", r.perfect_code_case},
  };
  if (grid_m >= 2) {
    BigRat g = meshulam_grid_upper(grid_m, n, k);
    j["grid_m"] = grid_m;
    j["grid_bound"] = rational_json(g);
    j["grid_bound_approx"] = rational_double(g);
  }
  if (as_json) {
    std::cout << j.dump(2) << "\n";
    return exit_ok;
  }
  std::cout << "bounds for n=" << n << " k=" << k << "\n";
  std::cout << "  aharoni-holzman upper  " << r.ah.str() << "\n";
  std::cout << "  meshulam upper         " << rational_string(r.meshulam)
            << " (~" << sig6(rational_double(r.meshulam)) << ")  floor "
            << r.meshulam_floor.str() << "\n";
  std::cout << "  beta                   " << rational_string(r.beta) << " (~"
            << sig6(rational_double(r.beta)) << ")\n";
  std::cout << "  eta                    " << rational_string(r.eta) << " (~"
            << sig6(rational_double(r.eta)) << ")\n";
  std::cout << "  random lower           ~" << sig6(r.random_lower) << "\n";
  std::cout << "  t_opt                  ~" << sig6(r.t_opt) << "\n";
  std::cout << "  g(beta)                ~" << sig6(r.ratio_g) << "\n";
  if (grid_m >= 2) {
    BigRat g = meshulam_grid_upper(grid_m, n, k);
    std::cout << "  grid bound (m=" << grid_m << ")      "
              << rational_string(g) << " (~" << sig6(rational_double(g))
              << ")\n";
  }
  if (r.equality_n_2k_plus_1)
    std::cout << "  equality: n=2k+1 (trivial perfect code)\n";
  if (r.perfect_code_case)
    std::cout << "  equality: perfect-code case (Hamming/Golay)\n";
  return exit_ok;
}

// ------------------------------------------------------------- construct --

struct ConstructArgs {
  std::string out;
  bool as_json = false;
};

int emit_family(const Family& f, const ConstructArgs& args,
                const std::string& kind, const json& extra = json::object()) {
  bool irredundant = is_irredundant(f);
  if (!args.out.empty()) write_cubes_file(args.out, f);
  if (args.as_json) {
    json j{{"kind", kind},
           {"n", f.n()},
           {"k", f.k()},
           {"size", f.size()},
           {"irredundant", irredundant}};
    for (auto& [key, value] : extra.items()) j[key] = value;
    if (!args.out.empty())
      j["out"] = args.out;
    else
      j["words"] = f.words();
    std::cout << j.dump(2) << "\n";
  } else if (!args.out.empty()) {
    std::cout << kind << ": n=" << f.n() << " k=" << f.k() << ", " << f.size()
              << " subcubes -> " << args.out << "\n"
              << "irredundant: " << (irredundant ? "yes" : "NO") << "\n";
  } else {
    write_cubes(std::cout, f);
    std::cerr << kind << ": n=" << f.n() << " k=" << f.k() << ", " << f.size()
              << " subcubes; irredundant: " << (irredundant ? "yes" : "NO")
              << "\n";
  }
  return irredundant ? exit_ok : exit_verification_failure;
}

// ---------------------------------------------------------------- verify --

int cmd_verify(const std::string& path, bool as_json) {
  CubesDocument doc = read_cubes_file(path);
  if (!doc.family) {
    if (as_json) {
      json j{{"size", 0}, {"irredundant", true}, {"note", "empty family"}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << "empty family (no header): vacuously irredundant\n";
    }
    return exit_ok;
  }
  const Family& f = *doc.family;
  auto privates = all_private_vertices(f);
  CoverageCounts cov = coverage_counts(f);
  bool verdict = true;
  for (const auto& pv : privates) verdict = verdict && !pv.empty();

  if (as_json) {
    json members = json::array();
    bool truncate = f.size() > 10000;
    for (std::size_t i = 0; !truncate && i < f.size(); ++i) {
      json m{{"index", i},
             {"word", to_word(f[i])},
             {"private_count", privates[i].size()}};
      if (!privates[i].empty())
        m["private_min"] = to_word(Vertex(privates[i].front(), f.n()));
      members.push_back(m);
    }
    json j{{"n", f.n()},
           {"k", f.k()},
           {"size", f.size()},
           {"irredundant", verdict},
           {"union_coverage", cov.covered()}};
    if (truncate)
      j["members_truncated"] = true;
    else
      j["members"] = members;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "family: n=" << f.n() << " k=" << f.k() << ", " << f.size()
              << " members\n";
    std::size_t shown = std::min<std::size_t>(f.size(), 1000);
    for (std::size_t i = 0; i < shown; ++i) {
      std::cout << "  [" << i << "] " << to_word(f[i])
                << "  privates=" << privates[i].size();
      if (!privates[i].empty())
        std::cout << "  e.g. " << to_word(Vertex(privates[i].front(), f.n()));
      else
        std::cout << "  <- contained in the union of the others";
      std::cout << "\n";
    }
    if (shown < f.size())
      std::cout << "  ... (" << f.size() - shown << " more members)\n";
    std::cout << "union coverage: " << cov.covered() << " / "
              << (std::uint64_t{1} << f.n()) << " vertices\n";
    std::cout << "verdict: " << (verdict ? "irredundant" : "NOT irredundant")
              << "\n";
  }
  return verdict ? exit_ok : exit_verification_failure;
}

// --------------------------------------------------------------- certify --

int cmd_certify(const std::string& path, const std::string& assignment_path,
                bool ball, bool as_json) {
  Family f = read_family_file(path);
  PrivateAssignment assignment;
  std::string assignment_source;
  if (!assignment_path.empty()) {
    std::vector<Vertex> vs = read_vertex_list_file(assignment_path);
    for (const Vertex& v : vs) {
      if (v.n != f.n())
        throw std::invalid_argument("assignment vertex length != family n");
      assignment.w.push_back(v.bits);
    }
    if (!is_valid_assignment(f, assignment))
      throw std::invalid_argument(
          "assignment file is not a valid private assignment");
    assignment_source = assignment_path;
  } else if (ball) {
    assignment = smallest_ball_assignment(f, f.k());
    assignment_source = "auto (smallest private vertex in the ball)";
  } else {
    assignment = smallest_private_assignment(f);
    assignment_source = "auto (smallest private vertex)";
  }

  CertificateMax max = ball ? max_ball_certificate(f, assignment)
                            : max_bollobas_certificate(f, assignment);
  bool pass = max.value <= 1;
  if (as_json) {
    json j{{"mode", ball ? "ball" : "bollobas"},
           {"n", f.n()},
           {"k", f.k()},
           {"size", f.size()},
           {"assignment", assignment_source},
           {"max", rational_json(max.value)},
           {"max_approx", rational_double(max.value)},
           {"argmax", to_word(Vertex(max.argmax, f.n()))},
           {"pass", pass}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "certificate: " << (ball ? "ball" : "bollobas") << "\n";
    std::cout << "assignment: " << assignment_source << "\n";
    std::cout << "max value: " << rational_string(max.value) << " (~"
              << sig6(rational_double(max.value)) << ") at x="
              << to_word(Vertex(max.argmax, f.n())) << "\n";
    std::cout << "verdict: " << (pass ? "pass (<= 1)" : "FAIL (> 1)") << "\n";
  }
  return pass ? exit_ok : exit_verification_failure;
}

// ---------------------------------------------------------------- search --

int cmd_search(int n, int k, const std::string& universe, bool enumerate,
               std::uint64_t budget, int threads, int cap,
               const std::string& out, bool as_json) {
  SearchProblem p;
  p.n = n;
  p.k = k;
  if (universe == "all")
    p.universe = Universe::all;
  else if (universe == "through01")
    p.universe = Universe::through_0_or_1;
  else if (universe == "ball")
    p.universe = Universe::ball_private;
  else
    throw std::invalid_argument("universe must be all|through01|ball");
  p.enumerate_extremal = enumerate;
  p.node_budget = budget;
  p.threads = threads;
  p.max_n = cap;

  SearchResult r = max_irredundant(p);
  if (!out.empty()) write_cubes_file(out, r.witness);

  json classes = json::array();
  for (const Family& c : r.extremal_classes) classes.push_back(c.words());
  if (as_json) {
    json j{{"n", n},
           {"k", k},
           {"universe", universe},
           {"optimum", r.optimum},
           {"complete", r.complete},
           {"node_count", r.node_count},
           {"witness", r.witness.words()},
           {"extremal_classes", classes}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "search n=" << n << " k=" << k << " universe=" << universe
              << "\n";
    std::cout << "optimum: " << r.optimum
              << (r.complete ? "" : "  (INCOMPLETE, budget exhausted)")
              << "\n";
    std::cout << "nodes: " << r.node_count << "\n";
    std::cout << "witness:";
    for (const std::string& w : r.witness.words()) std::cout << " " << w;
    std::cout << "\n";
    if (enumerate)
      std::cout << "extremal classes: " << r.extremal_classes.size() << "\n";
  }
  return r.complete ? exit_ok : exit_budget;
}

// ------------------------------------------------------------ experiment --

int cmd_experiment(int n, int k, int trials, const std::string& p_text,
                   std::uint64_t seed, int threads, bool as_json) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  apply_threads(threads);
  double p = parse_p(p_text, n, k);
  ExperimentStats stats = run_experiment(n, k, p, seed, trials);
  if (as_json) {
    json j{{"n", n},
           {"k", k},
           {"p", p},
           {"seed", seed},
           {"trials", stats.trials},
           {"mean", stats.mean},
           {"stddev", stats.stddev},
           {"std_error", stats.std_error},
           {"expected", stats.expected},
           {"z_score", stats.z_score},
           {"min", stats.min_size},
           {"max", stats.max_size},
           {"all_irredundant", stats.all_irredundant}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "experiment n=" << n << " k=" << k << " p=" << sig6(p)
              << " seed=" << seed << " trials=" << trials << "\n";
    std::cout << "  mean size      " << sig6(stats.mean) << "\n";
    std::cout << "  stddev         " << sig6(stats.stddev) << "\n";
    std::cout << "  std error      " << sig6(stats.std_error) << "\n";
    std::cout << "  expected       " << sig6(stats.expected) << "\n";
    std::cout << "  z-score        " << sig6(stats.z_score) << "\n";
    std::cout << "  size range     [" << stats.min_size << ", "
              << stats.max_size << "]\n";
    std::cout << "  all irredundant: "
              << (stats.all_irredundant ? "yes" : "NO") << "\n";
  }
  return stats.all_irredundant ? exit_ok : exit_verification_failure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"irredundant subcube families: bounds, constructions, "
               "verification, certificates, exact search"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (0 = library default; OMP_NUM_THREADS "
                 "honored)");

  // bounds
  auto* bounds_cmd = app.add_subcommand("bounds", "exact bound table for (n,k)");
  int b_n = 0, b_k = 0, b_grid = 0;
  bool b_json = false;
  bounds_cmd->add_option("--n", b_n, "ambient dimension")->required();
  bounds_cmd->add_option("--k", b_k, "subcube dimension")->required();
  bounds_cmd->add_option("--grid", b_grid, "also show the Z_m grid bound");
  bounds_cmd->add_flag("--json", b_json, "JSON output");

  // construct
  auto* construct_cmd =
      app.add_subcommand("construct", "build a family and write .cubes");
  construct_cmd->require_subcommand(1);
  ConstructArgs cargs;
  int c_n = 0, c_k = 0;
  std::string c_anchor, c_moving, c_code, c_p = "optimal";
  std::uint64_t c_seed = 1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", cargs.out, "output .cubes path");
    sub->add_flag("--json", cargs.as_json, "JSON summary");
  };
  auto* cc_principal = construct_cmd->add_subcommand(
      "principal", "all k-subcubes through an anchor vertex");
  cc_principal->add_option("--n", c_n)->required();
  cc_principal->add_option("--k", c_k)->required();
  cc_principal->add_option("--anchor", c_anchor, "vertex word (default 0...0)");
  add_common(cc_principal);

  auto* cc_translates = construct_cmd->add_subcommand(
      "translates", "all translates of one subcube (a partition)");
  cc_translates->add_option("--moving", c_moving,
                            "subcube word over {*,0} marking moving coords")
      ->required();
  add_common(cc_translates);

  auto* cc_from_code = construct_cmd->add_subcommand(
      "from-code", "k-subcubes through the words of a separated code");
  cc_from_code->add_option("--code", c_code, "vertex-list file")->required();
  cc_from_code->add_option("--k", c_k)->required();
  add_common(cc_from_code);

  auto* cc_b = construct_cmd->add_subcommand(
      "b-family", "through-0-or-1 family of size C(2k,k) in {0,1}^(2k)");
  cc_b->add_option("--k", c_k)->required();
  add_common(cc_b);

  auto* cc_e = construct_cmd->add_subcommand(
      "e-extension", "extension family of size C(2k-3,k-1) for b-family");
  cc_e->add_option("--k", c_k)->required();
  add_common(cc_e);

  auto* cc_exc = construct_cmd->add_subcommand(
      "exceptional-5-3", "the non-principal extremal family at n=5, k=3");
  add_common(cc_exc);

  auto* cc_prod = construct_cmd->add_subcommand(
      "product-k1", "edge family of size (m/(m+1)) 2^n, m = 2^s-1 <= n");
  cc_prod->add_option("--n", c_n)->required();
  add_common(cc_prod);

  auto* cc_rand = construct_cmd->add_subcommand(
      "random", "randomized construction (seeded, reproducible)");
  cc_rand->add_option("--n", c_n)->required();
  cc_rand->add_option("--k", c_k)->required();
  cc_rand->add_option("--p", c_p, "density in (0,1) or 'optimal'");
  cc_rand->add_option("--seed", c_seed, "RNG seed");
  add_common(cc_rand);

  // verify
  auto* verify_cmd =
      app.add_subcommand("verify", "check a .cubes family for irredundance");
  std::string v_file;
  bool v_json = false;
  verify_cmd->add_option("file", v_file, ".cubes file")->required();
  verify_cmd->add_flag("--json", v_json, "JSON output");

  // certify
  auto* certify_cmd = app.add_subcommand(
      "certify", "evaluate the packing-inequality certificate");
  std::string ce_file, ce_assignment;
  bool ce_ball = false, ce_json = false;
  certify_cmd->add_option("file", ce_file, ".cubes file")->required();
  certify_cmd->add_option("--assignment", ce_assignment,
                          "vertex-list file choosing private vertices");
  certify_cmd->add_flag("--ball", ce_ball,
                        "ball variant over weight-k vertices");
  certify_cmd->add_flag("--json", ce_json, "JSON output");

  // search
  auto* search_cmd =
      app.add_subcommand("search", "exact maximum irredundant family");
  int s_n = 0, s_k = 0, s_cap = 0;
  std::string s_universe = "all", s_out;
  bool s_enumerate = false, s_json = false;
  std::uint64_t s_budget = 1'000'000'000;
  search_cmd->add_option("--n", s_n)->required();
  search_cmd->add_option("--k", s_k)->required();
  search_cmd->add_option("--universe", s_universe, "all|through01|ball");
  search_cmd->add_flag("--enumerate", s_enumerate,
                       "collect all extremal isomorphism classes");
  search_cmd->add_option("--budget", s_budget, "node budget");
  search_cmd->add_option("--cap", s_cap, "override the dimension cap");
  search_cmd->add_option("--out", s_out, "write the witness as .cubes");
  search_cmd->add_flag("--json", s_json, "JSON output");

  // experiment
  auto* exp_cmd = app.add_subcommand(
      "experiment", "Monte-Carlo statistics of the random construction");
  int e_n = 0, e_k = 0, e_trials = 0;
  std::string e_p = "optimal";
  std::uint64_t e_seed = 1;
  bool e_json = false;
  exp_cmd->add_option("--n", e_n)->required();
  exp_cmd->add_option("--k", e_k)->required();
  exp_cmd->add_option("--trials", e_trials)->required();
  exp_cmd->add_option("--p", e_p, "density in (0,1) or 'optimal'");
  exp_cmd->add_option("--seed", e_seed, "base seed; trial t uses seed+t");
  exp_cmd->add_flag("--json", e_json, "JSON output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  try {
    apply_threads(threads);
    if (*bounds_cmd) return cmd_bounds(b_n, b_k, b_grid, b_json);
    if (*construct_cmd) {
      if (*cc_principal) {
        Vertex anchor = c_anchor.empty()
                            ? Vertex(0, c_n)
                            : parse_vertex(c_anchor);
        return emit_family(principal(c_n, c_k, anchor), cargs, "principal");
      }
      if (*cc_translates) {
        Subcube pattern = parse_subcube(c_moving);
        if (pattern.values)
          throw std::invalid_argument(
              "--moving word must use only '*' and '0'");
        return emit_family(translates(pattern.n, pattern.moving), cargs,
                           "translates");
      }
      if (*cc_from_code) {
        Code code = code_from_vertices(read_vertex_list_file(c_code));
        return emit_family(from_code(code.n, c_k, code), cargs, "from-code");
      }
      if (*cc_b) return emit_family(b_family(c_k), cargs, "b-family");
      if (*cc_e) return emit_family(e_extension(c_k), cargs, "e-extension");
      if (*cc_exc)
        return emit_family(exceptional_5_3(), cargs, "exceptional-5-3");
      if (*cc_prod) return emit_family(product_k1(c_n), cargs, "product-k1");
      if (*cc_rand) {
        if (cargs.out.empty())
          throw std::invalid_argument(
              "construct random requires --out (a JSON sidecar is written "
              "next to it)");
        double p = parse_p(c_p, c_n, c_k);
        RandomFamilyResult r = random_family(c_n, c_k, p, c_seed);
        json sidecar{{"n", c_n},
                     {"k", c_k},
                     {"p", p},
                     {"seed", c_seed},
                     {"sample_size", r.sample_size},
                     {"family_size", r.family.size()}};
        std::ofstream side(cargs.out + ".json");
        side << sidecar.dump(2) << "\n";
        return emit_family(r.family, cargs, "random", sidecar);
      }
    }
    if (*verify_cmd) return cmd_verify(v_file, v_json);
    if (*certify_cmd)
      return cmd_certify(ce_file, ce_assignment, ce_ball, ce_json);
    if (*search_cmd)
      return cmd_search(s_n, s_k, s_universe, s_enumerate, s_budget, threads,
                        s_cap, s_out, s_json);
    if (*exp_cmd)
      return cmd_experiment(e_n, e_k, e_trials, e_p, e_seed, threads, e_json);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
  return exit_usage;
}
