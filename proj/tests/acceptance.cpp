// Acceptance gate: one line per criterion, nonzero exit if any fails.
#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dualcube/compcut.hpp"
#include "dualcube/harness.hpp"
#include "dualcube/oracle.hpp"
#include "dualcube/sampling.hpp"
#include "dualcube/streeforge.hpp"
#include "dualcube/topology.hpp"

using namespace dualcube;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

const std::vector<std::string> kCaseTags = {
    "one-cluster",
    "two:3+1-same",
    "two:3+1-cross:free:bridge",
    "two:3+1-cross:free:bridge-is-w",
    "two:3+1-cross:free:clear-w",
    "two:3+1-cross:free:clear-nbr",
    "two:3+1-cross:pivot-hit",
    "two:3+1-cross:pivot-hit-is-w",
    "two:2+2-same:separate",
    "two:2+2-same:shared",
    "two:2+2-cross",
    "three:2+1+1-same",
    "three:2+1+1-mixed",
    "three:2+1+1-opposite:pivots",
    "three:2+1+1-opposite:edge:separate",
    "three:2+1+1-opposite:edge:shared",
    "four:same",
    "four:3+1",
    "four:2+2",
};

void fail(Outcome& o, const std::string& why) {
  if (o.pass) o.detail = why;
  o.pass = false;
}

Outcome topology_exact() {
  Outcome o;
  for (int n = 2; n <= 5; ++n) {
    DualCube d(n);
    const Graph& g = d.graph();
    if (g.order() != (1 << (2 * n - 1))) fail(o, "D" + std::to_string(n) + " vertex count");
    for (int v = 0; v < g.order(); ++v) {
      if (static_cast<int>(g.neighbors(v).size()) != n) fail(o, "D" + std::to_string(n) + " not regular");
      for (int u : g.neighbors(v)) {
        if ((std::popcount(g.label(u)) + std::popcount(g.label(v))) % 2 == 0) fail(o, "D" + std::to_string(n) + " not bipartite");
      }
    }
    if (n > 4) continue;
    for (ClusterRef a : d.clusters_of_class(0)) {
      auto va = d.cluster_vertices(a);
      for (ClusterRef b : d.clusters_of_class(1)) {
        int edges = 0;
        for (Vertex x : d.cluster_vertices(b)) {
          for (Vertex y : va) edges += g.adjacent(x, y) ? 1 : 0;
        }
        if (edges != 1) fail(o, "D" + std::to_string(n) + " cluster pair with " + std::to_string(edges) + " edges");
      }
    }
  }
  if (o.pass) o.detail = "n=2..5";
  return o;
}

Outcome connectivity() {
  Outcome o;
  std::ostringstream s;
  auto expect = [&](const std::string& name, const Graph& g, int want) {
    int got = oracle::vertex_connectivity(g);
    s << name << "=" << got << " ";
    if (got != want) fail(o, name + " gave " + std::to_string(got));
  };
  expect("Q3", Hypercube(3).graph(), 3);
  expect("Q4", Hypercube(4).graph(), 4);
  expect("D2", DualCube(2).graph(), 2);
  expect("D3", DualCube(3).graph(), 3);
  expect("D4", DualCube(4).graph(), 4);
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome tree_samples(int size, int count) {
  Outcome o;
  std::ostringstream s;
  for (int n : {4, 5}) {
    DualCube d(n);
    auto sets = stratified_sample(d, size, count, 2024);
    BatchSummary b = run_tree_batch(d, sets);
    s << "D" << n << " " << b.passed << "/" << b.trials << " ";
    if (b.trials < static_cast<std::size_t>(count)) fail(o, "D" + std::to_string(n) + " undersampled");
    if (b.passed != b.trials) fail(o, "D" + std::to_string(n) + " " + b.failures.front());
    if (b.reservation_exhausted) fail(o, "D" + std::to_string(n) + " reservation exhausted");
    if (size == 4) {
      for (const auto& tag : kCaseTags) {
        if (!b.census.count(tag)) fail(o, "D" + std::to_string(n) + " never reached " + tag);
      }
      s << "(" << b.census.size() << " cases) ";
    }
  }
  if (o.pass) o.detail = s.str();
  return o;
}

Outcome hypercube_q3() {
  Outcome o;
  Hypercube q(3);
  int sets = 0;
  for (Vertex a = 0; a < 8; ++a)
    for (Vertex b = a + 1; b < 8; ++b)
      for (Vertex c = b + 1; c < 8; ++c)
        for (Vertex e = c + 1; e < 8; ++e) {
          std::vector<Vertex> s{a, b, c, e};
          ++sets;
          TreeSet ts = hypercube_strees4(q, s);
          if (!oracle::verify_tree_set(q.graph(), ts, 2).overall()) fail(o, "invalid trees");
          auto best = oracle::max_stree_packing(q.graph(), s);
          if (!best.exact || best.count != 2) fail(o, "packing optimum " + std::to_string(best.count));
        }
  if (o.pass) o.detail = std::to_string(sets) + " sets, optimum 2 each";
  return o;
}

Outcome cut_upper() {
  Outcome o;
  int checked = 0;
  for (int n = 3; n <= 5; ++n) {
    DualCube d(n);
    for (int r = 1; r <= n - 1; ++r) {
      CutSet cut = component_cut(d, r);
      std::string at = "n=" + std::to_string(n) + " r=" + std::to_string(r);
      if (static_cast<int>(cut.removed.size()) != r * n - r * (r + 1) / 2 + 1) fail(o, at + " size");
      auto census = verify_cut(d, cut.removed);
      if (census.size() < static_cast<std::size_t>(r + 1)) fail(o, at + " components");
      if (std::count(census.begin(), census.end(), 1U) < r) fail(o, at + " singletons");
      ++checked;
    }
  }
  if (o.pass) o.detail = std::to_string(checked) + " (n,r) pairs; n=4 r=3 size " +
                         std::to_string(component_cut(DualCube(4), 3).removed.size());
  return o;
}

Outcome cut_lower() {
  Outcome o;
  const Graph g = DualCube(3).graph();
  if (oracle::exhaustive_cut_search(g, 2, 1)) fail(o, "size 2 disconnects D3");
  if (oracle::exhaustive_cut_search(g, 3, 2)) fail(o, "size 3 leaves 3 components");
  if (!oracle::exhaustive_cut_search(g, 3, 1) || !oracle::exhaustive_cut_search(g, 4, 2)) fail(o, "formula sizes not attained");
  if (o.pass) o.detail = "D3: minimum sizes 3 (r=1) and 4 (r=2)";
  return o;
}

Outcome structure() {
  Outcome o;
  DualCube d(4);
  std::mt19937_64 rng(77);
  std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(d.vertex_count() - 1));
  std::ostringstream s;
  for (int k = 1; k <= 3; ++k) {
    int size = k * 4 - k * (k + 1) / 2;
    std::size_t worst = 0;
    for (int trial = 0; trial < 200; ++trial) {
      std::set<Vertex> t;
      while (static_cast<int>(t.size()) < size) t.insert(pick(rng));
      std::vector<Vertex> tv(t.begin(), t.end());
      auto rep = structure_check(d, tv, k);
      worst = std::max(worst, rep.small_total);
      if (!rep.holds) fail(o, "k=" + std::to_string(k) + " small total " + std::to_string(rep.small_total));
    }
    s << "k=" << k << " worst " << worst << " ";
  }
  if (o.pass) o.detail = s.str();
  return o;
}

std::string capture(const std::string& cmd) {
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return "<popen failed>";
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  int status = pclose(p);
  if (status != 0) out += "<exit " + std::to_string(status) + ">";
  return out;
}

Outcome determinism() {
  Outcome o;
  const std::string tool = DUALCUBE_TOOL_PATH;
  const std::vector<std::string> commands = {
      " trees --n 5 --terminals 000000000,000010010,011010001,110000111 --format json",
      " trees --n 5 --terminals 000000000,000010010,011010001,110000111 --format dot",
      " trees --n 4 --terminals 0000000,0000011,1111111 --format json",
      " cut --n 5 --r 3 --format json",
      " cut --n 4 --r 2 --format dot",
      " gen --n 3 --format dot",
  };
  for (const auto& c : commands) {
    std::string cmd = "'" + tool + "'" + c + " 2>/dev/null";
    std::string first = capture(cmd);
    if (first.empty() || first.find("<exit") != std::string::npos) fail(o, "run failed:" + c);
    for (int i = 0; i < 2; ++i) {
      if (capture(cmd) != first) fail(o, "output differs:" + c);
    }
  }
  if (o.pass) o.detail = std::to_string(commands.size()) + " commands x 3 runs";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"topology exactness", topology_exact},
      {"connectivity oracle", connectivity},
      {"4-terminal trees, n=4,5", [] { return tree_samples(4, 600); }},
      {"3-terminal trees, n=4,5", [] { return tree_samples(3, 400); }},
      {"Q3 subroutine vs packing oracle", hypercube_q3},
      {"component cut upper bound", cut_upper},
      {"component cut lower bound on D3", cut_lower},
      {"structure after deletion, D4", structure},
      {"CLI determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %zu. %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), secs,
                o.detail.c_str());
    std::fflush(stdout);
    if (!o.pass) ++failed;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
