// Command-line front end for the link-structure optimization library.
//
// Subcommands: pagerank, visits, update, optimal, verify, brute, simulate,
// export-dot.  Every subcommand except export-dot prints a JSON run report
// to stdout; export-dot prints DOT text.  Diagnostics go to stderr.
// Exit codes: 0 success, 1 input error, 2 infeasible request (accessibility
// violated, enumeration cap exceeded, or solver failure).

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "linkopt/linkopt.hpp"

namespace {

using nlohmann::json;
using namespace linkopt;

constexpr int kSchemaVersion = 1;

// Rounds to 12 significant digits so reports are stable across platforms.
json j12(double x) {
  if (!std::isfinite(x)) return x;
  std::ostringstream os;
  os.precision(12);
  os << x;
  return std::stod(os.str());
}

json jvec(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(j12(x));
  return a;
}

json jnodes(const NodeSet& s) {
  json a = json::array();
  for (int i : s) a.push_back(i);
  return a;
}

json jedges(const std::vector<Edge>& es) {
  json a = json::array();
  for (const auto& [i, j] : es) a.push_back(json::array({i, j}));
  return a;
}

// FNV-1a over the raw graph file plus the canonical parameter string.
std::uint64_t fnv1a(const std::string& data, std::uint64_t h) {
  for (unsigned char ch : data) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct CommonArgs {
  std::string graph_file;
  double c = 0.85;
  std::string z_file;
  std::string route_name = "auto";
  bool patch_dangling = false;
};

SolveRoute route_of(const std::string& name) {
  if (name == "auto") return SolveRoute::automatic;
  if (name == "dense") return SolveRoute::dense;
  if (name == "iterative") return SolveRoute::iterative;
  throw ValidationError("unknown route '" + name + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct LoadedInputs {
  WebGraph graph;
  RankingContext ctx;
  SolveRoute route;
  std::uint64_t digest;
};

LoadedInputs load_inputs(const CommonArgs& args,
                         const std::string& param_echo) {
  const std::string text = read_file(args.graph_file);
  WebGraph g = parse_graph(text);
  if (args.patch_dangling) g = g.with_dangling_patched();
  RankingContext ctx;
  std::uint64_t digest = fnv1a(text, 14695981039346656037ULL);
  if (!args.z_file.empty()) {
    const std::string ztext = read_file(args.z_file);
    ctx.c = args.c;
    ctx.z = parse_personalization(ztext, g.n());
    digest = fnv1a(ztext, digest);
  } else {
    ctx = RankingContext::uniform(g.n(), args.c);
  }
  digest = fnv1a(param_echo, digest);
  return LoadedInputs{std::move(g), std::move(ctx), route_of(args.route_name),
                      digest};
}

json cert_to_json(const StructureCertificate& cert) {
  json violations = json::array();
  for (const auto& v : cert.violations) {
    violations.push_back({{"rule", v.rule},
                          {"witness_edges", jedges(v.witness_edges)},
                          {"witness_nodes", jnodes(v.witness_nodes)},
                          {"margin", j12(v.margin)}});
  }
  json out = {{"satisfied", cert.satisfied},
              {"ordering", jnodes(cert.ordering)},
              {"violations", violations},
              {"leaking_nodes", jnodes(cert.leaking_nodes)},
              {"v", jvec(cert.v_snapshot.v)},
              {"separation_holds", cert.separation_holds},
              {"separation_margin", j12(cert.separation_margin)}};
  if (cert.exit_target) {
    out["exit_target"] = *cert.exit_target;
    out["exit_target_in_top_set"] = cert.exit_target_in_top_set;
  }
  return out;
}

json config_to_json(const Configuration& cfg) {
  return {{"internal", jedges(cfg.internal)},
          {"external_out", jedges(cfg.external_out)},
          {"value", j12(cfg.value)}};
}

void emit_report(const std::string& command,
                 const std::vector<std::string>& argv_echo,
                 std::uint64_t digest, double elapsed_ms, json results) {
  json report = {{"schema_version", kSchemaVersion},
                 {"command", command},
                 {"argv", argv_echo},
                 {"inputs_digest", hex64(digest)},
                 {"timing_ms", j12(elapsed_ms)},
                 {"results", std::move(results)}};
  std::cout << report.dump(2) << "\n";
}

NodeSet parse_set_arg(const std::string& s, int n) {
  NodeSet set = parse_node_set(s);
  for (int i : set) {
    if (i < 1 || i > n) {
      throw ValidationError("node id " + std::to_string(i) +
                            " out of range 1.." + std::to_string(n));
    }
  }
  return set;
}

Edge parse_edge_arg(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
    throw ValidationError("expected an edge as 'i,j'");
  try {
    std::size_t used = 0;
    const std::string a = s.substr(0, comma), b = s.substr(comma + 1);
    const int i = std::stoi(a, &used);
    if (used != a.size()) throw ValidationError("expected an edge as 'i,j'");
    const int j = std::stoi(b, &used);
    if (used != b.size()) throw ValidationError("expected an edge as 'i,j'");
    return {i, j};
  } catch (const std::invalid_argument&) {
    throw ValidationError("expected an edge as 'i,j'");
  } catch (const std::out_of_range&) {
    throw ValidationError("expected an edge as 'i,j'");
  }
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"link-structure analysis and optimization for ranked webgraphs"};
  app.require_subcommand(1);

  std::vector<std::string> argv_echo(argv, argv + argc);

  CommonArgs common;
  const auto add_common = [&common](CLI::App* cmd) {
    cmd->add_option("--graph", common.graph_file, "graph file (edge list)")
        ->required();
    cmd->add_option("--c", common.c, "damping factor in (0,1)");
    cmd->add_option("--z-file", common.z_file,
                    "personalization vector file (one weight per line)");
    cmd->add_option("--route", common.route_name,
                    "linear solver route: auto|dense|iterative");
    cmd->add_flag("--patch-dangling", common.patch_dangling,
                  "give nodes without outlinks a link to every node");
  };

  // ---- pagerank ----
  auto* cmd_pagerank = app.add_subcommand("pagerank", "ranking vector");
  add_common(cmd_pagerank);

  // ---- visits ----
  auto* cmd_visits =
      app.add_subcommand("visits", "visit values and top external nodes");
  add_common(cmd_visits);
  std::string set_arg;
  cmd_visits->add_option("--set", set_arg, "node set, e.g. 1,2,3")->required();

  // ---- update ----
  auto* cmd_update =
      app.add_subcommand("update", "effect of changing one node's outlinks");
  add_common(cmd_update);
  std::string upd_set, upd_children, upd_add, upd_remove;
  int upd_node = 0;
  cmd_update->add_option("--set", upd_set, "node set")->required();
  cmd_update->add_option("--node", upd_node, "node whose outlinks change");
  cmd_update->add_option("--children", upd_children,
                         "replacement children, e.g. 2,3");
  cmd_update->add_option("--add", upd_add, "add one link given as 'i,j'");
  cmd_update->add_option("--remove", upd_remove,
                         "remove one link given as 'i,j'");

  // ---- optimal ----
  auto* cmd_optimal =
      app.add_subcommand("optimal", "search the best admissible structure");
  add_common(cmd_optimal);
  std::string opt_set;
  bool opt_no_self = false;
  int opt_min_outlinks = 1;
  int opt_max_perm = 8;
  cmd_optimal->add_option("--set", opt_set, "node set")->required();
  cmd_optimal->add_flag("--no-self-links", opt_no_self,
                        "exclude self links from the candidate structures");
  cmd_optimal->add_option("--min-outlinks", opt_min_outlinks,
                          "required number of external outlinks");
  cmd_optimal->add_option("--max-perm", opt_max_perm,
                          "largest set size for the arrangement search");

  // ---- verify ----
  auto* cmd_verify =
      app.add_subcommand("verify", "structure certificates for a node set");
  add_common(cmd_verify);
  std::string ver_set;
  bool ver_no_self = false;
  int ver_min_outlinks = 1;
  cmd_verify->add_option("--set", ver_set, "node set")->required();
  cmd_verify->add_flag("--no-self-links", ver_no_self,
                       "judge the shape without self links");
  cmd_verify->add_option("--min-outlinks", ver_min_outlinks,
                         "required number of external outlinks");

  // ---- brute ----
  auto* cmd_brute =
      app.add_subcommand("brute", "exhaustive search over admissible structures");
  add_common(cmd_brute);
  std::string br_set, br_target;
  bool br_no_self = false, br_fix_internal = false, br_fix_external = false;
  bool br_probe = false;
  int br_min_outlinks = 1, br_cap = 25;
  cmd_brute->add_option("--set", br_set, "node set")->required();
  cmd_brute->add_option("--target", br_target,
                        "maximize this subset of the node set instead");
  cmd_brute->add_flag("--no-self-links", br_no_self,
                      "exclude self links from the enumeration");
  cmd_brute->add_option("--min-outlinks", br_min_outlinks,
                        "required number of external outlinks");
  cmd_brute->add_option("--cap", br_cap, "largest free edge-slot count");
  cmd_brute->add_flag("--fix-internal", br_fix_internal,
                      "keep the current internal links fixed");
  cmd_brute->add_flag("--fix-external", br_fix_external,
                      "keep the current external outlinks fixed");
  cmd_brute->add_flag("--probe-conjecture", br_probe,
                      "tabulate optima against the parent/top-set heuristics");

  // ---- simulate ----
  auto* cmd_sim = app.add_subcommand("simulate", "random-surfer estimates");
  cmd_sim->require_subcommand(1);
  auto* cmd_sim_visits = cmd_sim->add_subcommand(
      "visits", "estimate expected visits to the set from a start node");
  auto* cmd_sim_return =
      cmd_sim->add_subcommand("return", "estimate the mean return time");
  std::string sim_set;
  int sim_start = 1;
  std::uint64_t sim_trials = 100000, sim_seed = 1;
  int sim_max_steps = 1000;
  for (CLI::App* sc : {cmd_sim_visits, cmd_sim_return}) {
    add_common(sc);
    sc->add_option("--start", sim_start, "start node")->required();
    sc->add_option("--trials", sim_trials, "number of trajectories");
    sc->add_option("--seed", sim_seed, "random seed");
    sc->add_option("--max-steps", sim_max_steps, "trajectory length cap");
  }
  cmd_sim_visits->add_option("--set", sim_set, "node set")->required();

  // ---- export-dot ----
  auto* cmd_dot = app.add_subcommand("export-dot", "Graphviz drawing");
  add_common(cmd_dot);
  std::string dot_set;
  bool dot_values = false;
  cmd_dot->add_option("--set", dot_set, "node set to group");
  cmd_dot->add_flag("--with-values", dot_values,
                    "label nodes with visit values and order the set by them");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&t0] {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  // Canonical parameter string folded into the inputs digest.
  std::string param_echo;
  for (int a = 1; a < argc; ++a) {
    param_echo += argv[a];
    param_echo += '\n';
  }

  try {
    if (*cmd_pagerank) {
      LoadedInputs in = load_inputs(common, param_echo);
      const PageRankVector pr = pagerank(in.graph, in.ctx, in.route);
      const double resid = pagerank_residual(in.graph, in.ctx, pr.pi);
      std::cerr << "pagerank: n=" << in.graph.n() << " residual=" << std::setprecision(4)
                << resid << "\n";
      emit_report("pagerank", argv_echo, in.digest, elapsed_ms(),
                  {{"pi", jvec(pr.pi)}, {"residual", j12(resid)}});
      return 0;
    }

    if (*cmd_visits) {
      LoadedInputs in = load_inputs(common, param_echo);
      const NodeSet I = parse_set_arg(set_arg, in.graph.n());
      const VisitVector v = visit_vector(in.graph, I, in.ctx, in.route);
      const double value = set_pagerank(in.graph, I, in.ctx, in.route);
      const VTopSet top = v_top_set(in.graph, I, in.ctx, in.route);
      std::cerr << "visits: set value " << std::setprecision(4) << value
                << "\n";
      emit_report("visits", argv_echo, in.digest, elapsed_ms(),
                  {{"v", jvec(v.v)},
                   {"set_pagerank", j12(value)},
                   {"V", jnodes(top.nodes)},
                   {"V_all_zero", top.all_zero}});
      return 0;
    }

    if (*cmd_update) {
      LoadedInputs in = load_inputs(common, param_echo);
      const NodeSet I = parse_set_arg(upd_set, in.graph.n());
      const int ways = (!upd_children.empty() || upd_node != 0 ? 1 : 0) +
                       (!upd_add.empty() ? 1 : 0) +
                       (!upd_remove.empty() ? 1 : 0);
      if (ways != 1) {
        throw ValidationError(
            "specify exactly one of --node/--children, --add, or --remove");
      }
      OutlinkMutation m{};
      if (!upd_add.empty()) {
        const Edge e = parse_edge_arg(upd_add);
        m = mutation_from_add(in.graph, e.first, e.second);
      } else if (!upd_remove.empty()) {
        const Edge e = parse_edge_arg(upd_remove);
        m = mutation_from_remove(in.graph, e.first, e.second);
      } else {
        if (upd_node == 0) throw ValidationError("--children requires --node");
        m.node = upd_node;
        m.new_children = parse_set_arg(upd_children, in.graph.n());
      }
      m.validate(in.graph);
      MutationEvaluator eval(in.graph, I, in.ctx, in.route);
      const MutationEffect eff = eval.evaluate(m);
      const WebGraph mutated = in.graph.with_children(m.node, m.new_children);
      const double direct = set_pagerank(mutated, I, in.ctx, in.route);
      const double resid = std::abs(eff.new_value - direct) /
                           std::max(1.0, std::abs(direct));
      std::cerr << "update: " << std::setprecision(4) << eff.old_value
                << " -> " << eff.new_value << " (" << to_string(eff.sign)
                << ")\n";
      emit_report("update", argv_echo, in.digest, elapsed_ms(),
                  {{"node", m.node},
                   {"children", jnodes(m.new_children)},
                   {"old_value", j12(eff.old_value)},
                   {"new_value", j12(eff.new_value)},
                   {"delta", j12(eff.new_value - eff.old_value)},
                   {"sign", to_string(eff.sign)},
                   {"recompute_residual", j12(resid)}});
      return 0;
    }

    if (*cmd_optimal) {
      LoadedInputs in = load_inputs(common, param_echo);
      const NodeSet I = parse_set_arg(opt_set, in.graph.n());
      StructureConstraints sc;
      sc.allow_self_links = !opt_no_self;
      sc.min_external_outlinks = opt_min_outlinks;
      const BuiltStructure built =
          build_optimal_structure(in.graph, I, in.ctx, sc, opt_max_perm);
      const StructureCertificate cert =
          verify_website_opt_shape(built.graph, I, in.ctx, sc);
      std::cerr << "optimal: value " << std::setprecision(4) << built.value
                << "\n";
      emit_report("optimal", argv_echo, in.digest, elapsed_ms(),
                  {{"graph", format_graph(built.graph)},
                   {"edges", jedges(built.graph.edges())},
                   {"value", j12(built.value)},
                   {"certificate", cert_to_json(cert)}});
      return 0;
    }

    if (*cmd_verify) {
      LoadedInputs in = load_inputs(common, param_echo);
      const NodeSet I = parse_set_arg(ver_set, in.graph.n());
      StructureConstraints sc;
      sc.allow_self_links = !ver_no_self;
      sc.min_external_outlinks = ver_min_outlinks;
      const StructureCertificate website =
          verify_website_opt_shape(in.graph, I, in.ctx, sc);
      const StructureCertificate internal =
          verify_internal_structure(in.graph, I, in.ctx);
      const StructureCertificate outlink =
          verify_outlink_structure(in.graph, I, in.ctx);
      std::cerr << "verify: website=" << website.satisfied
                << " internal=" << internal.satisfied
                << " outlink=" << outlink.satisfied << "\n";
      emit_report("verify", argv_echo, in.digest, elapsed_ms(),
                  {{"website", cert_to_json(website)},
                   {"internal", cert_to_json(internal)},
                   {"outlink", cert_to_json(outlink)}});
      return 0;
    }

    if (*cmd_brute) {
      LoadedInputs in = load_inputs(common, param_echo);
      const NodeSet I = parse_set_arg(br_set, in.graph.n());
      StructureConstraints sc;
      sc.allow_self_links = !br_no_self;
      sc.min_external_outlinks = br_min_outlinks;
      EnumerationOptions opts;
      opts.fix_internal = br_fix_internal;
      opts.fix_external = br_fix_external;
      opts.cap_bits = br_cap;
      if (br_probe) {
        const ProbeReport probe = conjecture_probe(in.graph, I, in.ctx, sc, opts);
        json rows = json::array();
        for (const auto& row : probe.rows) {
          rows.push_back(
              {{"config", config_to_json(row.config)},
               {"head", row.head},
               {"head_has_external_parent", row.head_has_external_parent},
               {"some_parent_in_top_set", row.some_parent_in_top_set}});
        }
        std::cerr << "brute: probed " << probe.rows.size() << " optima\n";
        emit_report("brute", argv_echo, in.digest, elapsed_ms(),
                    {{"probe_rows", rows},
                     {"counterexample_candidates",
                      probe.counterexample_candidates},
                     {"value", j12(probe.value)},
                     {"count_enumerated", probe.count_enumerated}});
        return 0;
      }
      BruteForceResult result;
      if (!br_target.empty()) {
        const NodeSet S = parse_set_arg(br_target, in.graph.n());
        result = brute_force_target(in.graph, I, S, in.ctx, sc, opts);
      } else {
        result = brute_force_optimum(in.graph, I, in.ctx, sc, opts);
      }
      json optima = json::array();
      for (std::size_t k = 0; k < result.optima.size(); ++k) {
        json o = config_to_json(result.optima[k]);
        if (k < result.target_sub_shape.size())
          o["target_sub_shape"] = static_cast<bool>(result.target_sub_shape[k]);
        optima.push_back(std::move(o));
      }
      std::cerr << "brute: " << result.count_enumerated
                << " admissible, best " << std::setprecision(4) << result.value
                << "\n";
      emit_report("brute", argv_echo, in.digest, elapsed_ms(),
                  {{"optima", optima},
                   {"value", j12(result.value)},
                   {"count_enumerated", result.count_enumerated},
                   {"top2_gap", j12(result.top2_gap)}});
      return 0;
    }

    if (*cmd_sim) {
      LoadedInputs in = load_inputs(common, param_echo);
      SimConfig cfg;
      cfg.trials = sim_trials;
      cfg.seed = sim_seed;
      cfg.max_steps = sim_max_steps;
      if (const char* tc = std::getenv("LINKOPT_THREADS")) {
        try {
          cfg.threads = std::max(1, std::stoi(tc));
        } catch (const std::exception&) {
          throw ValidationError("LINKOPT_THREADS must be an integer");
        }
      }
      SimResult r;
      std::string which;
      if (*cmd_sim_visits) {
        const NodeSet I = parse_set_arg(sim_set, in.graph.n());
        r = simulate_visits(in.graph, I, in.ctx, sim_start, cfg);
        which = "visits";
      } else {
        r = simulate_return_time(in.graph, in.ctx, sim_start, cfg);
        which = "return";
      }
      std::cerr << "simulate " << which << ": " << std::setprecision(4)
                << r.estimate << " +- " << r.stderr_ << "\n";
      emit_report("simulate " + which, argv_echo, in.digest, elapsed_ms(),
                  {{"estimate", j12(r.estimate)},
                   {"stderr", j12(r.stderr_)},
                   {"truncated_mass", j12(r.truncated_mass)},
                   {"trials", r.trials}});
      return 0;
    }

    if (*cmd_dot) {
      LoadedInputs in = load_inputs(common, param_echo);
      NodeSet I;
      if (!dot_set.empty()) I = parse_set_arg(dot_set, in.graph.n());
      if (dot_values) {
        const VisitVector v = visit_vector(in.graph, I, in.ctx, in.route);
        std::cout << export_dot(in.graph, I, v.v);
      } else {
        std::cout << export_dot(in.graph, I);
      }
      return 0;
    }
  } catch (const AccessibilityError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const AccessibilityUndefinedError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const CapExceededError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::cerr << "error: no subcommand selected\n";
  return 1;
}
