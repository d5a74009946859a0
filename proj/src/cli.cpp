#include "fmlab/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "fmlab/autgroup.hpp"
#include "fmlab/constructions.hpp"
#include "fmlab/errors.hpp"
#include "fmlab/eval.hpp"
#include "fmlab/parser.hpp"
#include "fmlab/randomlab.hpp"
#include "fmlab/structures.hpp"
#include "fmlab/transforms.hpp"

namespace fmlab {

namespace {

// FMLAB_SEED provides the default --seed; read once per process.
std::uint64_t default_seed() {
  static const std::uint64_t seed = [] {
    const char* env = std::getenv("FMLAB_SEED");
    if (!env) return std::uint64_t{1};
    return static_cast<std::uint64_t>(std::strtoull(env, nullptr, 10));
  }();
  return seed;
}

Structure read_structure(const std::string& path, std::istream& in) {
  if (path == "-") return parse_structure(in);
  std::ifstream file(path);
  if (!file) throw InputError("cannot open " + path);
  return parse_structure(file);
}

// A formula argument is a file ('-' or an existing path, one sentence per
// line) or literal formula text.
std::vector<FormulaRef> read_formulas(const std::string& arg,
                                      const Signature& sig,
                                      std::istream& in) {
  if (arg == "-") return parse_formula_lines(in, sig);
  if (std::filesystem::exists(arg)) {
    std::ifstream file(arg);
    if (!file) throw InputError("cannot open " + arg);
    return parse_formula_lines(file, sig);
  }
  return {parse_formula(arg, sig)};
}

class OutputTarget {
 public:
  OutputTarget(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_.open(path);
      if (!file_) throw InputError("cannot open " + path + " for writing");
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_ = nullptr;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InputError("bad integer '" + item + "' in list");
    }
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

struct GenArgs {
  std::string kind;
  std::vector<int> params;
  std::string sig_text = "R/2";
  std::string rel = "R";
  std::string output;
};

void run_gen(const GenArgs& args, std::istream&, std::ostream& out) {
  Graph g;
  auto need = [&](std::size_t count) {
    if (args.params.size() != count) {
      throw InputError("gen " + args.kind + " takes " + std::to_string(count) +
                       " argument(s)");
    }
  };
  if (args.kind == "bn") {
    need(1);
    g = binary_tree(args.params[0]).graph;
  } else if (args.kind == "tn") {
    need(1);
    g = t_tree(args.params[0]).graph;
  } else if (args.kind == "fn") {
    need(1);
    g = rigid_forest(args.params[0]);
  } else if (args.kind == "conn") {
    need(1);
    g = connected_model(args.params[0]);
  } else if (args.kind == "trunc45") {
    need(2);
    g = truncated_tree_45(args.params[0], args.params[1]);
  } else if (args.kind == "path") {
    need(1);
    g = path_graph(args.params[0]);
  } else {
    throw InputError("unknown generator '" + args.kind +
                     "' (bn, tn, fn, conn, trunc45, path)");
  }
  Signature sig = parse_signature(args.sig_text);
  OutputTarget target(args.output, out);
  print_structure(r_graph_from_graph(g, sig, args.rel), target.get());
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  CLI::App app{"finite structures, FO model checking and graph experiments"};
  app.require_subcommand(1);

  // gen
  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand(
      "gen", "emit a construction in the structure text format");
  gen_cmd->add_option("kind", gen.kind, "bn|tn|fn|conn|trunc45|path")
      ->required();
  gen_cmd->add_option("params", gen.params, "generator arguments");
  gen_cmd->add_option("--sig", gen.sig_text, "signature, default R/2");
  gen_cmd->add_option("--rel", gen.rel, "graph relation symbol, default R");
  gen_cmd->add_option("-o,--output", gen.output, "output file, default stdout");

  // autos / rigid / orbits
  std::string autos_file;
  std::uint64_t autos_limit = 0;
  CLI::App* autos_cmd =
      app.add_subcommand("autos", "list automorphisms in cycle notation");
  autos_cmd->add_option("file", autos_file, "structure file or -")->required();
  autos_cmd->add_option("--limit", autos_limit, "stop after this many");

  std::string rigid_file;
  CLI::App* rigid_cmd =
      app.add_subcommand("rigid", "test for a trivial automorphism group");
  rigid_cmd->add_option("file", rigid_file, "structure file or -")->required();

  std::string orbits_file;
  bool orbits_stats = false;
  CLI::App* orbits_cmd =
      app.add_subcommand("orbits", "print automorphism orbits");
  orbits_cmd->add_option("file", orbits_file, "structure file or -")
      ->required();
  orbits_cmd->add_flag("--stats", orbits_stats, "append orbit statistics");

  // eval
  std::string eval_structure, eval_formula, eval_p;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate sentences on a structure");
  eval_cmd->add_option("structure", eval_structure, "structure file or -")
      ->required();
  eval_cmd->add_option("formula", eval_formula, "formula text or file")
      ->required();
  eval_cmd->add_option("--p", eval_p, "decide the P atom: true|false")
      ->check(CLI::IsMember({"true", "false"}));

  // transforms
  std::string rel_formula, rel_sig, rel_q;
  CLI::App* rel_cmd =
      app.add_subcommand("relativize", "bound all quantifiers to the Q part");
  rel_cmd->add_option("formula", rel_formula, "formula text or file")
      ->required();
  rel_cmd->add_option("--sig", rel_sig, "signature")->required();
  rel_cmd->add_option("--q", rel_q, "tag symbol")->required();

  std::string prime_formula, prime_sig;
  CLI::App* prime_cmd =
      app.add_subcommand("prime", "replace P by a tautology");
  prime_cmd->add_option("formula", prime_formula, "formula text or file")
      ->required();
  prime_cmd->add_option("--sig", prime_sig, "signature")->required();

  std::string dprime_formula, dprime_sig;
  CLI::App* dprime_cmd = app.add_subcommand(
      "doubleprime", "replace P by a negated tautology");
  dprime_cmd->add_option("formula", dprime_formula, "formula text or file")
      ->required();
  dprime_cmd->add_option("--sig", dprime_sig, "signature")->required();

  // sentence generators
  std::string g0_sig, g0_q = "Q", g0_r = "R";
  CLI::App* g0_cmd =
      app.add_subcommand("gamma0", "emit the Q-tag discipline sentences");
  g0_cmd->add_option("--sig", g0_sig, "signature")->required();
  g0_cmd->add_option("--q", g0_q, "tag symbol, default Q");
  g0_cmd->add_option("--r", g0_r, "graph symbol, default R");

  std::string g1_sig, g1_q = "Q", g1_r = "R";
  int g1_m = 3;
  CLI::App* g1_cmd =
      app.add_subcommand("gamma1m", "emit the level-m fragment sentences");
  g1_cmd->add_option("--sig", g1_sig, "signature")->required();
  g1_cmd->add_option("--q", g1_q, "tag symbol, default Q");
  g1_cmd->add_option("--r", g1_r, "graph symbol, default R");
  g1_cmd->add_option("--m", g1_m, "fragment level, >= 3")->required();

  std::string cg_file, cg_rel = "R";
  int cg_m = 3;
  CLI::App* cg_cmd = app.add_subcommand(
      "check-gamma", "run the semantic level-m checkers on an R-graph");
  cg_cmd->add_option("file", cg_file, "structure file or -")->required();
  cg_cmd->add_option("--m", cg_m, "fragment level, >= 3")->required();
  cg_cmd->add_option("--rel", cg_rel, "graph relation symbol, default R");

  // th_m_q
  std::string thq_file, thq_q = "Q";
  PoolOptions thq_pool;
  CLI::App* thq_cmd = app.add_subcommand(
      "thq", "emit relativized pool sentences true in the structure");
  thq_cmd->add_option("file", thq_file, "structure file or -")->required();
  thq_cmd->add_option("--q", thq_q, "tag symbol, default Q");
  thq_cmd->add_option("--rank", thq_pool.max_rank, "pool quantifier rank");
  thq_cmd->add_option("--max-size", thq_pool.max_size, "pool node budget");
  thq_cmd->add_option("--limit", thq_pool.limit, "pool cap");

  // estimate / trend
  SamplerConfig est_cfg;
  est_cfg.seed = default_seed();
  std::uint64_t est_samples = 10000;
  std::vector<std::string> est_predicates;
  bool est_exact = false;
  int est_chains = 1;
  CLI::App* est_cmd = app.add_subcommand(
      "estimate", "estimate predicate proportions over degree-capped graphs");
  est_cmd->add_option("--n", est_cfg.n, "vertex count")->required();
  est_cmd->add_option("--samples", est_samples, "sample count");
  est_cmd->add_option("--seed", est_cfg.seed, "chain seed");
  est_cmd->add_option("--cap", est_cfg.degree_cap, "degree cap, default 5");
  est_cmd->add_option("--burnin", est_cfg.burn_in, "burn-in steps, 0 = auto");
  est_cmd->add_option("--thinning", est_cfg.thinning,
                      "steps between samples, 0 = auto");
  est_cmd->add_option("--predicate", est_predicates, "predicate name(s)")
      ->required();
  est_cmd->add_flag("--exact", est_exact, "enumerate instead of sampling");
  est_cmd->add_option("--chains", est_chains, "parallel chains");

  std::string trend_ns;
  SamplerConfig trend_cfg;
  trend_cfg.seed = default_seed();
  std::uint64_t trend_samples = 2000;
  std::vector<std::string> trend_predicates;
  int trend_chains = 1;
  std::string trend_out;
  CLI::App* trend_cmd = app.add_subcommand(
      "trend", "estimate proportions across a list of sizes");
  trend_cmd->add_option("--ns", trend_ns, "comma-separated sizes, e.g. 12,24,48")
      ->required();
  trend_cmd->add_option("--samples", trend_samples, "samples per size");
  trend_cmd->add_option("--seed", trend_cfg.seed, "chain seed");
  trend_cmd->add_option("--cap", trend_cfg.degree_cap, "degree cap");
  trend_cmd->add_option("--predicate", trend_predicates, "predicate name(s)")
      ->required();
  trend_cmd->add_option("--chains", trend_chains, "parallel chains per size");
  trend_cmd->add_option("-o,--output", trend_out, "table file, default stdout");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (gen_cmd->parsed()) {
      run_gen(gen, in, out);
    } else if (autos_cmd->parsed()) {
      Structure s = read_structure(autos_file, in);
      auto limit = autos_limit
                       ? std::optional<std::uint64_t>(autos_limit)
                       : std::nullopt;
      for (const Permutation& p : automorphisms(s, limit)) {
        out << p.cycle_notation() << '\n';
      }
    } else if (rigid_cmd->parsed()) {
      Structure s = read_structure(rigid_file, in);
      out << "rigid: " << (is_rigid(s) ? "true" : "false") << '\n';
    } else if (orbits_cmd->parsed()) {
      Structure s = read_structure(orbits_file, in);
      OrbitPartition partition = orbits(s);
      for (const auto& block : partition.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) {
          if (i) out << ' ';
          out << block[i];
        }
        out << '\n';
      }
      if (orbits_stats) {
        OrbitStatistics stats = orbit_statistics(s);
        out << "orbits: " << stats.orbit_count
            << " finite: " << stats.finite_orbit_count
            << " max_size: " << stats.max_orbit_size
            << " nontrivial: " << stats.nontrivial_orbit_count << '\n';
      }
    } else if (eval_cmd->parsed()) {
      Structure s = read_structure(eval_structure, in);
      for (const FormulaRef& f :
           read_formulas(eval_formula, s.signature(), in)) {
        bool value = eval_p.empty() ? evaluate(s, f)
                                    : evaluate_with_p(s, f, eval_p == "true");
        out << (value ? "true" : "false") << '\n';
      }
    } else if (rel_cmd->parsed()) {
      Signature sig = parse_signature(rel_sig);
      for (const FormulaRef& f : read_formulas(rel_formula, sig, in)) {
        out << print_formula(relativize_q(f, sig, rel_q)) << '\n';
      }
    } else if (prime_cmd->parsed()) {
      Signature sig = parse_signature(prime_sig);
      for (const FormulaRef& f : read_formulas(prime_formula, sig, in)) {
        out << print_formula(prime_transform(f)) << '\n';
      }
    } else if (dprime_cmd->parsed()) {
      Signature sig = parse_signature(dprime_sig);
      for (const FormulaRef& f : read_formulas(dprime_formula, sig, in)) {
        out << print_formula(double_prime_transform(f)) << '\n';
      }
    } else if (g0_cmd->parsed()) {
      for (const FormulaRef& f :
           gamma0_sentences(parse_signature(g0_sig), g0_q, g0_r)) {
        out << print_formula(f) << '\n';
      }
    } else if (g1_cmd->parsed()) {
      for (const FormulaRef& f :
           gamma1m_sentences(parse_signature(g1_sig), g1_q, g1_r, g1_m)) {
        out << print_formula(f) << '\n';
      }
    } else if (cg_cmd->parsed()) {
      Structure s = read_structure(cg_file, in);
      GammaFlags flags = check_gamma1m(graph_from_r_graph(s, cg_rel), cg_m);
      auto word = [](bool b) { return b ? "true" : "false"; };
      out << "no_short_cycles: " << word(flags.no_short_cycles) << '\n'
          << "degrees_45: " << word(flags.degrees_45) << '\n'
          << "enough_degree4: " << word(flags.enough_degree4) << '\n'
          << "degree4_far_apart: " << word(flags.degree4_far_apart) << '\n'
          << "rigid: " << word(flags.rigid) << '\n'
          << "connected: " << word(flags.connected) << '\n'
          << "all: " << word(flags.all) << '\n';
    } else if (thq_cmd->parsed()) {
      Structure s = read_structure(thq_file, in);
      for (const FormulaRef& f : th_m_q(s, thq_q, thq_pool)) {
        out << print_formula(f) << '\n';
      }
    } else if (est_cmd->parsed()) {
      SampleReport report = estimate_proportion(est_cfg, est_samples,
                                                est_predicates, est_exact,
                                                est_chains);
      print_report(report, out);
    } else if (trend_cmd->parsed()) {
      std::vector<int> ns = parse_int_list(trend_ns);
      OutputTarget target(trend_out, out);
      for (const SampleReport& report :
           trend_experiment(ns, trend_cfg, trend_samples, trend_predicates,
                            trend_chains)) {
        print_report(report, target.get());
      }
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace fmlab
