#include "dualcube/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "dualcube/compcut.hpp"
#include "dualcube/errors.hpp"
#include "dualcube/harness.hpp"
#include "dualcube/oracle.hpp"
#include "dualcube/sampling.hpp"
#include "dualcube/serialize.hpp"
#include "dualcube/streeforge.hpp"

namespace dualcube::cli {

namespace {

struct RunConfig {
  int n = 0;
  int r = 0;
  std::vector<std::string> terminals;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string output;
  std::string suite = "all";
  int budget = 200;
  int jobs = 0;
  bool unchecked = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int default_jobs() {
  if (const char* env = std::getenv("DUALCUBE_JOBS")) {
    try {
      return std::stoi(env);
    } catch (const std::exception&) {
      throw UsageError(std::string("DUALCUBE_JOBS is not a number: ") + env);
    }
  }
  return 0;
}

DualCube make_cube(int n, int lowest) {
  if (n < lowest || n > DualCube::kMaxMaterializedOrder) {
    throw UsageError("--n must lie in " + std::to_string(lowest) + ".." +
                     std::to_string(DualCube::kMaxMaterializedOrder));
  }
  return DualCube(n);
}

void emit(const RunConfig& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw UsageError("cannot write " + cfg.output);
  file << text;
}

std::vector<Vertex> parse_terminals(const DualCube& d, const std::vector<std::string>& texts) {
  std::vector<Vertex> out;
  for (const auto& t : texts) {
    Label l = Label::parse(t);
    if (l.width() != d.width()) {
      throw UsageError("terminal " + t + " must have " + std::to_string(d.width()) + " bits");
    }
    out.push_back(l.bits());
  }
  return out;
}

int cmd_gen(const RunConfig& cfg, std::ostream& out) {
  DualCube d = make_cube(cfg.n, 2);
  if (cfg.format == "json") {
    emit(cfg, out, dump(graph_to_json(d)));
  } else if (cfg.format == "dot") {
    emit(cfg, out, graph_to_dot(d));
  } else {
    std::ostringstream s;
    s << "D_" << d.order() << ": " << d.vertex_count() << " vertices, " << d.graph().edge_count() << " edges\n";
    for (const auto& [a, b] : d.graph().edges()) s << d.str(a) << ' ' << d.str(b) << '\n';
    emit(cfg, out, s.str());
  }
  return kExitOk;
}

int cmd_trees(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  DualCube d = make_cube(cfg.n, 4);
  TerminalSet s(d, parse_terminals(d, cfg.terminals));
  TreeSet ts = s.size() == 4 ? strees4(d, s) : strees3(d, s);
  bool ok = true;
  if (!cfg.unchecked) {
    auto report = oracle::verify_tree_set(d, ts);
    ok = report.overall();
    err << "verification: " << (ok ? "pass" : "FAIL") << " (" << ts.trees.size() << " trees, case " << ts.case_tag
        << ")\n";
    if (!ok) {
      err << dump(oracle::to_json(report));
      return kExitVerificationFailed;
    }
  }
  if (cfg.format == "json") {
    emit(cfg, out, dump(to_json(ts, d.order())));
  } else if (cfg.format == "dot") {
    emit(cfg, out, to_dot(ts));
  } else {
    emit(cfg, out, to_text(ts));
  }
  return kExitOk;
}

std::string cut_dot(const DualCube& d, const CutSet& cut) {
  std::ostringstream s;
  s << "graph cut {\n";
  for (Vertex v : cut.removed) s << "  \"" << d.str(v) << "\" [style=filled, fillcolor=red];\n";
  for (const auto& [a, b] : d.graph().edges()) s << "  \"" << d.str(a) << "\" -- \"" << d.str(b) << "\";\n";
  s << "}\n";
  return s.str();
}

int cmd_cut(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  DualCube d = make_cube(cfg.n, 2);
  if (cfg.r < 1 || cfg.r > cfg.n - 1) throw UsageError("--r must lie in 1.." + std::to_string(cfg.n - 1));
  CutSet cut = component_cut(d, cfg.r);
  if (!cfg.unchecked) {
    bool ok = verify_cut(d, cut);
    err << "verification: " << (ok ? "pass" : "FAIL") << " (" << cut.removed.size() << " removed, "
        << cut.census.size() << " components)\n";
    if (!ok) return kExitVerificationFailed;
  }
  if (cfg.format == "json") {
    emit(cfg, out, dump(to_json(cut, d)));
  } else if (cfg.format == "dot") {
    emit(cfg, out, cut_dot(d, cut));
  } else {
    std::ostringstream s;
    s << "removed (" << cut.removed.size() << "):";
    for (Vertex v : cut.removed) s << ' ' << d.str(v);
    s << "\ncensus:";
    for (auto c : cut.census) s << ' ' << c;
    s << '\n';
    emit(cfg, out, s.str());
  }
  return kExitOk;
}

oracle::VerificationReport topology_suite(const DualCube& d) {
  oracle::VerificationReport rep;
  rep.subject = "topology D" + std::to_string(d.order());
  const Graph& g = d.graph();
  std::size_t expect = std::size_t{1} << (2 * d.order() - 1);
  rep.checks.push_back({"vertex-count", static_cast<std::size_t>(g.order()) == expect,
                        std::to_string(g.order()) + " vs " + std::to_string(expect)});
  oracle::Check regular{"regular", true, ""};
  oracle::Check bipartite{"bipartite", true, ""};
  for (int v = 0; v < g.order(); ++v) {
    if (static_cast<int>(g.neighbors(v).size()) != d.order() && regular.pass) {
      regular = {"regular", false, d.str(g.label(v))};
    }
    for (int u : g.neighbors(v)) {
      if (std::popcount(g.label(u)) % 2 == std::popcount(g.label(v)) % 2 && bipartite.pass) {
        bipartite = {"bipartite", false, d.str(g.label(v)) + "-" + d.str(g.label(u))};
      }
    }
  }
  rep.checks.push_back(regular);
  rep.checks.push_back(bipartite);
  oracle::Check cross{"one-cross-edge-per-cluster-pair", true, ""};
  std::map<std::pair<Vertex, Vertex>, int> between;
  for (const auto& [a, b] : g.edges()) {
    if (d.class_of(a) == d.class_of(b)) continue;
    Vertex c0 = d.class_of(a) == 0 ? a : b;
    Vertex c1 = c0 == a ? b : a;
    ++between[{d.cluster_of(c0).fixed_bits, d.cluster_of(c1).fixed_bits}];
  }
  std::size_t pairs = d.clusters_per_class() * d.clusters_per_class();
  if (between.size() != pairs) cross = {cross.name, false, std::to_string(between.size()) + " linked pairs"};
  for (auto& [p, k] : between) {
    if (k != 1 && cross.pass) cross = {cross.name, false, "pair has " + std::to_string(k) + " edges"};
  }
  rep.checks.push_back(cross);
  if (d.order() <= 4) {
    int kappa = oracle::vertex_connectivity(g);
    rep.checks.push_back({"connectivity", kappa == d.order(), "kappa = " + std::to_string(kappa)});
  }
  for (auto& c : rep.checks) {
    if (c.pass) c.witness.clear();
  }
  return rep;
}

oracle::VerificationReport cuts_suite(const DualCube& d) {
  oracle::VerificationReport rep;
  rep.subject = "cuts D" + std::to_string(d.order());
  for (int r = 1; r <= d.order() - 1; ++r) {
    CutSet cut = component_cut(d, r);
    bool ok = verify_cut(d, cut);
    rep.checks.push_back({"upper-bound r=" + std::to_string(r), ok,
                          ok ? "" : std::to_string(cut.census.size()) + " components"});
    int below = cut_size_formula(d.order(), r) - 1;
    std::string name = "lower-bound r=" + std::to_string(r);
    try {
      auto w = oracle::exhaustive_cut_search(d.graph(), below, r);
      std::string witness;
      if (w) {
        for (Vertex v : w->removed) witness += (witness.empty() ? "" : ",") + d.str(v);
      }
      rep.checks.push_back({name, !w, witness});
    } catch (const BudgetExceeded&) {
      // Out of reach by exhaustion; not reported as a check.
    }
  }
  return rep;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out) {
  if (cfg.suite != "topology" && cfg.suite != "trees" && cfg.suite != "cuts" && cfg.suite != "all") {
    throw UsageError("unknown suite " + cfg.suite);
  }
  if (cfg.budget < 1) throw UsageError("--budget must be positive");
  const bool all = cfg.suite == "all";
  DualCube d = make_cube(cfg.n, all || cfg.suite == "trees" ? 4 : 2);
  nlohmann::json doc{{"n", cfg.n}, {"suite", cfg.suite}};
  nlohmann::json reports = nlohmann::json::array();
  bool ok = true;
  auto add = [&](const oracle::VerificationReport& r) {
    ok = ok && r.overall();
    reports.push_back(oracle::to_json(r));
  };
  if (all || cfg.suite == "topology") add(topology_suite(d));
  if (all || cfg.suite == "cuts") add(cuts_suite(d));
  if (all || cfg.suite == "trees") {
    nlohmann::json census = nlohmann::json::object();
    for (int size : {4, 3}) {
      auto sets = stratified_sample(d, size, cfg.budget, cfg.seed);
      BatchSummary s = run_tree_batch(d, sets, cfg.jobs);
      oracle::VerificationReport r;
      r.subject = "trees |S|=" + std::to_string(size);
      r.checks.push_back({"all-verified", s.passed == s.trials,
                          s.failures.empty() ? "" : s.failures.front()});
      r.checks.push_back({"sampled", s.trials == sets.size() && !sets.empty(),
                          std::to_string(s.trials) + " sets"});
      r.checks.push_back({"no-reservation-exhaustion", s.reservation_exhausted == 0,
                          s.reservation_exhausted ? std::to_string(s.reservation_exhausted) : ""});
      if (r.checks[1].pass) r.checks[1].witness.clear();
      add(r);
      for (auto& [tag, k] : s.census) census[std::to_string(size) + ":" + tag] = k;
    }
    doc["census"] = census;
  }
  doc["reports"] = reports;
  doc["overall"] = ok;
  emit(cfg, out, dump(doc));
  return ok ? kExitOk : kExitVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Dual-cube networks: graphs, disjoint Steiner trees, component cuts", "dualcube"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "json, dot or text")->check(CLI::IsMember({"json", "dot", "text"}));
    sub->add_option("--output", cfg.output, "write here instead of stdout");
    sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
  };
  auto* gen = app.add_subcommand("gen", "emit D_n");
  gen->add_option("--n", cfg.n, "order")->required();
  common(gen);

  auto* trees = app.add_subcommand("trees", "n-1 internally disjoint trees for 3 or 4 terminals");
  trees->add_option("--n", cfg.n, "order (>= 4)")->required();
  trees->add_option("--terminals", cfg.terminals, "comma separated bit strings")->required()->delimiter(',');
  trees->add_flag("--unchecked", cfg.unchecked, "skip verification (benchmarking only)");
  common(trees);

  auto* cut = app.add_subcommand("cut", "minimum (r+1)-component cut");
  cut->add_option("--n", cfg.n, "order")->required();
  cut->add_option("--r", cfg.r, "extra components")->required();
  cut->add_flag("--unchecked", cfg.unchecked, "skip verification (benchmarking only)");
  common(cut);

  auto* verify = app.add_subcommand("verify", "run oracle suites");
  verify->add_option("--n", cfg.n, "order")->required();
  verify->add_option("--suite", cfg.suite, "topology, trees, cuts or all")->capture_default_str();
  verify->add_option("--budget", cfg.budget, "sampled terminal sets per size")->capture_default_str();
  verify->add_option("--jobs", cfg.jobs, "worker threads (default: DUALCUBE_JOBS or all cores)");
  common(verify);

  try {
    cfg.jobs = default_jobs();
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(cfg, out);
    if (trees->parsed()) return cmd_trees(cfg, out, err);
    if (cut->parsed()) return cmd_cut(cfg, out, err);
    return cmd_verify(cfg, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitVerificationFailed;
  }
}

}  // namespace dualcube::cli
