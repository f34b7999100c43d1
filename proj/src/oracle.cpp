#include "dualcube/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <deque>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <omp.h>

#include "dualcube/errors.hpp"

namespace dualcube::oracle {

bool VerificationReport::overall() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

const Check* VerificationReport::failure() const {
  for (const auto& c : checks) {
    if (!c.pass) return &c;
  }
  return nullptr;
}

nlohmann::json to_json(const VerificationReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.witness}});
  return {{"subject", r.subject}, {"overall", r.overall()}, {"checks", checks}};
}

namespace {

// Plain Edmonds-Karp on an explicit split graph, written separately from the
// constructors' flow engine on purpose.
class SplitFlow {
 public:
  explicit SplitFlow(const Graph& g) : n_(g.order()), head_(static_cast<std::size_t>(2 * n_), -1) {
    for (int v = 0; v < n_; ++v) add(2 * v, 2 * v + 1, 1);
    for (int v = 0; v < n_; ++v) {
      for (int u : g.neighbors(v)) add(2 * v + 1, 2 * u, n_);
    }
  }

  // Flow from x's out-node to y's in-node, stopping at `cap`.
  int run(int x, int y, int cap) {
    std::vector<int> residual = cap_;
    int s = 2 * x + 1, t = 2 * y;
    int total = 0;
    std::vector<int> via(head_.size());
    while (total < cap) {
      std::fill(via.begin(), via.end(), -1);
      std::deque<int> q{s};
      via[static_cast<std::size_t>(s)] = -2;
      while (!q.empty() && via[static_cast<std::size_t>(t)] == -1) {
        int u = q.front();
        q.pop_front();
        for (int e = head_[static_cast<std::size_t>(u)]; e >= 0; e = next_[static_cast<std::size_t>(e)]) {
          int w = to_[static_cast<std::size_t>(e)];
          if (residual[static_cast<std::size_t>(e)] > 0 && via[static_cast<std::size_t>(w)] == -1) {
            via[static_cast<std::size_t>(w)] = e;
            q.push_back(w);
          }
        }
      }
      if (via[static_cast<std::size_t>(t)] == -1) break;
      for (int v = t; v != s;) {
        int e = via[static_cast<std::size_t>(v)];
        residual[static_cast<std::size_t>(e)] -= 1;
        residual[static_cast<std::size_t>(e ^ 1)] += 1;
        v = to_[static_cast<std::size_t>(e ^ 1)];
      }
      ++total;
    }
    return total;
  }

 private:
  void add(int a, int b, int c) {
    for (auto [from, to, cap] : {std::array<int, 3>{a, b, c}, std::array<int, 3>{b, a, 0}}) {
      to_.push_back(to);
      cap_.push_back(cap);
      next_.push_back(head_[static_cast<std::size_t>(from)]);
      head_[static_cast<std::size_t>(from)] = static_cast<int>(to_.size()) - 1;
    }
  }

  int n_;
  std::vector<int> head_, next_, to_, cap_;
};

int pair_connectivity(SplitFlow& flow, const Graph& g, int x, int y) {
  bool adjacent = std::binary_search(g.neighbors(x).begin(), g.neighbors(x).end(), y);
  // The direct edge carries up to n units in the split graph; remove it from
  // the count by capping and subtracting when the endpoints are adjacent.
  int f = flow.run(x, y, 2 * g.order());
  return adjacent ? f - g.order() + 1 : f;
}

bool is_complete(const Graph& g) {
  for (int v = 0; v < g.order(); ++v) {
    if (static_cast<int>(g.neighbors(v).size()) != g.order() - 1) return false;
  }
  return true;
}

int min_degree(const Graph& g) {
  int best = g.order();
  for (int v = 0; v < g.order(); ++v) best = std::min(best, static_cast<int>(g.neighbors(v).size()));
  return best;
}

int connectivity_from(const Graph& g, int x, int bound) {
  SplitFlow flow(g);
  int best = bound;
  for (int y = x + 1; y < g.order(); ++y) {
    if (std::binary_search(g.neighbors(x).begin(), g.neighbors(x).end(), y)) continue;
    best = std::min(best, flow.run(x, y, best));
  }
  return best;
}

}  // namespace

int local_connectivity(const Graph& g, Vertex x, Vertex y) {
  int ix = g.index_of(x), iy = g.index_of(y);
  if (ix < 0 || iy < 0 || ix == iy) throw InvalidArgument("local_connectivity: need two distinct vertices");
  SplitFlow flow(g);
  return pair_connectivity(flow, g, ix, iy);
}

int vertex_connectivity_serial(const Graph& g) {
  if (g.order() <= 1) return 0;
  if (is_complete(g)) return g.order() - 1;
  int best = min_degree(g);
  for (int x = 0; x < g.order(); ++x) best = std::min(best, connectivity_from(g, x, best));
  return best;
}

int vertex_connectivity(const Graph& g) {
  if (g.order() <= 1) return 0;
  if (is_complete(g)) return g.order() - 1;
  const int bound = min_degree(g);
  const int order = g.order();
  int best = bound;
#pragma omp parallel for schedule(dynamic) reduction(min : best)
  for (int x = 0; x < order; ++x) best = std::min(best, connectivity_from(g, x, bound));
  return best;
}

namespace {

std::string edge_str(const Edge& e, int width) { return to_bits(e.first, width) + "-" + to_bits(e.second, width); }

VerificationReport verify_with(const std::function<bool(Vertex, Vertex)>& adjacent, const std::string& subject,
                               const TreeSet& ts, std::optional<int> expected) {
  VerificationReport report;
  report.subject = subject;
  const int w = ts.width;
  std::set<Vertex> terminals(ts.terminals.begin(), ts.terminals.end());
  auto tname = [](std::size_t i) { return "T" + std::to_string(i + 1); };

  Check count{"tree-count", true, ""};
  if (expected && static_cast<int>(ts.trees.size()) != *expected) {
    count.pass = false;
    count.witness = "got " + std::to_string(ts.trees.size()) + ", expected " + std::to_string(*expected);
  }
  Check in_graph{"edges-in-graph", true, ""};
  Check connected{"connected", true, ""};
  Check acyclic{"acyclic", true, ""};
  Check spans{"spans-terminals", true, ""};
  Check vdisjoint{"internally-disjoint", true, ""};
  Check edisjoint{"edge-disjoint", true, ""};
  auto fail = [](Check& c, std::string why) {
    if (c.pass) {
      c.pass = false;
      c.witness = std::move(why);
    }
  };

  std::map<Vertex, std::size_t> owner;
  std::map<Edge, std::size_t> edge_owner;
  for (std::size_t i = 0; i < ts.trees.size(); ++i) {
    const Tree& t = ts.trees[i];
    std::map<Vertex, Vertex> parent;
    std::function<Vertex(Vertex)> find = [&](Vertex v) {
      auto it = parent.find(v);
      if (it == parent.end()) return parent[v] = v;
      if (it->second == v) return v;
      return it->second = find(it->second);
    };
    std::set<Edge> seen_edges;
    for (const auto& [a0, b0] : t) {
      Edge e = make_edge(a0, b0);
      if (a0 == b0 || !adjacent(e.first, e.second)) fail(in_graph, tname(i) + " " + edge_str(e, w));
      if (!seen_edges.insert(e).second) {
        fail(acyclic, tname(i) + " repeats " + edge_str(e, w));
        continue;
      }
      Vertex ra = find(e.first), rb = find(e.second);
      if (ra == rb) {
        fail(acyclic, tname(i) + " cycle closed by " + edge_str(e, w));
      } else {
        parent[ra] = rb;
      }
      auto [it, fresh] = edge_owner.emplace(e, i);
      if (!fresh) fail(edisjoint, tname(it->second) + "/" + tname(i) + " share " + edge_str(e, w));
    }
    for (Vertex s : terminals) {
      if (!parent.count(s)) fail(spans, "terminal-missing: " + tname(i) + " lacks " + to_bits(s, w));
    }
    std::set<Vertex> roots;
    for (auto& [v, p] : parent) roots.insert(find(v));
    if (roots.size() != 1) {
      fail(connected, tname(i) + " has " + std::to_string(roots.size()) + " pieces");
    }
    for (auto& [v, p] : parent) {
      if (terminals.count(v)) continue;
      auto [it, fresh] = owner.emplace(v, i);
      if (!fresh) fail(vdisjoint, tname(it->second) + "/" + tname(i) + " share " + to_bits(v, w));
    }
  }
  report.checks = {count, in_graph, connected, acyclic, spans, vdisjoint, edisjoint};
  return report;
}

std::string subject_of(const TreeSet& ts) {
  std::string s = "trees{";
  for (std::size_t i = 0; i < ts.terminals.size(); ++i) s += (i ? "," : "") + to_bits(ts.terminals[i], ts.width);
  return s + "}";
}

}  // namespace

VerificationReport verify_tree_set(const Graph& g, const TreeSet& ts, std::optional<int> expected) {
  return verify_with([&](Vertex a, Vertex b) { return g.adjacent(a, b); }, subject_of(ts), ts, expected);
}

VerificationReport verify_tree_set(const DualCube& d, const TreeSet& ts) {
  // Adjacency straight from the label rule: flip one free bit, or the class bit.
  auto adjacent = [&](Vertex a, Vertex b) {
    if (!d.is_vertex(a) || !d.is_vertex(b)) return false;
    Vertex x = a ^ b;
    if (x == 1) return true;
    if ((a & 1U) != (b & 1U) || (x & (x - 1)) != 0 || x == 0) return false;
    int bit = std::countr_zero(x);
    int n = d.order();
    return (a & 1U) == 0 ? (bit >= n && bit <= 2 * n - 2) : (bit >= 1 && bit <= n - 1);
  };
  return verify_with(adjacent, "D" + std::to_string(d.order()) + ":" + subject_of(ts), ts, d.order() - 1);
}

std::vector<std::size_t> component_census(const Graph& g, std::span<const Vertex> removed) {
  std::vector<char> gone(static_cast<std::size_t>(g.order()), 0);
  for (Vertex v : removed) {
    int i = g.index_of(v);
    if (i < 0) throw InvalidArgument("component_census: vertex not in graph");
    gone[static_cast<std::size_t>(i)] = 1;
  }
  std::vector<std::size_t> sizes;
  std::vector<int> stack;
  for (int s = 0; s < g.order(); ++s) {
    if (gone[static_cast<std::size_t>(s)]) continue;
    std::size_t size = 0;
    gone[static_cast<std::size_t>(s)] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      ++size;
      for (int v : g.neighbors(u)) {
        if (!gone[static_cast<std::size_t>(v)]) {
          gone[static_cast<std::size_t>(v)] = 1;
          stack.push_back(v);
        }
      }
    }
    sizes.push_back(size);
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

// ---- Steiner packing ------------------------------------------------------

namespace {

using Mask = std::uint64_t;

struct PackingInstance {
  const Graph& g;
  std::vector<int> terminals;      // indices
  std::vector<int> others;         // non-terminal indices, bit i of a mask
  std::vector<std::pair<int, int>> tedges;  // terminal-terminal edges, bit others.size()+j

  Mask edge_bit(std::size_t j) const { return Mask{1} << (others.size() + j); }

  bool connects(Mask m) const {
    std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
    for (int t : terminals) in[static_cast<std::size_t>(t)] = 1;
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (m >> i & 1U) in[static_cast<std::size_t>(others[i])] = 1;
    }
    std::vector<char> seen(in.size(), 0);
    std::vector<int> stack{terminals[0]};
    seen[static_cast<std::size_t>(terminals[0])] = 1;
    auto terminal = [&](int v) { return std::find(terminals.begin(), terminals.end(), v) != terminals.end(); };
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors(u)) {
        if (!in[static_cast<std::size_t>(v)] || seen[static_cast<std::size_t>(v)]) continue;
        if (terminal(u) && terminal(v)) {
          auto it = std::find(tedges.begin(), tedges.end(), std::pair{std::min(u, v), std::max(u, v)});
          if (!(m & edge_bit(static_cast<std::size_t>(it - tedges.begin())))) continue;
        }
        seen[static_cast<std::size_t>(v)] = 1;
        stack.push_back(v);
      }
    }
    return std::all_of(terminals.begin(), terminals.end(), [&](int t) { return seen[static_cast<std::size_t>(t)]; });
  }

  Tree tree_of(Mask m) const {
    std::vector<char> in(static_cast<std::size_t>(g.order()), 0);
    for (int t : terminals) in[static_cast<std::size_t>(t)] = 1;
    for (std::size_t i = 0; i < others.size(); ++i) {
      if (m >> i & 1U) in[static_cast<std::size_t>(others[i])] = 1;
    }
    auto terminal = [&](int v) { return std::find(terminals.begin(), terminals.end(), v) != terminals.end(); };
    // A minimal configuration is a tree once terminal edges not in m are dropped.
    Tree t;
    for (int u = 0; u < g.order(); ++u) {
      if (!in[static_cast<std::size_t>(u)]) continue;
      for (int v : g.neighbors(u)) {
        if (v <= u || !in[static_cast<std::size_t>(v)]) continue;
        if (terminal(u) && terminal(v)) {
          auto it = std::find(tedges.begin(), tedges.end(), std::pair{u, v});
          if (!(m & edge_bit(static_cast<std::size_t>(it - tedges.begin())))) continue;
        }
        t.push_back(make_edge(g.label(u), g.label(v)));
      }
    }
    std::sort(t.begin(), t.end());
    return t;
  }
};

// Repeatedly grows a BFS Steiner tree in what is left and removes it.
Packing greedy_packing(const Graph& g, const std::vector<int>& terminals) {
  Packing p;
  std::vector<char> used(static_cast<std::size_t>(g.order()), 0);
  std::set<std::pair<int, int>> used_edges;
  auto terminal = [&](int v) { return std::find(terminals.begin(), terminals.end(), v) != terminals.end(); };
  while (true) {
    std::set<int> tree{terminals[0]};
    std::vector<std::pair<int, int>> edges;
    bool ok = true;
    for (std::size_t k = 1; k < terminals.size() && ok; ++k) {
      if (tree.count(terminals[k])) continue;
      std::vector<int> parent(static_cast<std::size_t>(g.order()), -1);
      std::deque<int> q;
      for (int v : tree) {
        parent[static_cast<std::size_t>(v)] = v;
        q.push_back(v);
      }
      int hit = -1;
      while (!q.empty() && hit < 0) {
        int u = q.front();
        q.pop_front();
        for (int v : g.neighbors(u)) {
          if (parent[static_cast<std::size_t>(v)] >= 0) continue;
          if (used[static_cast<std::size_t>(v)]) continue;
          if (terminal(v) && v != terminals[k]) continue;
          auto e = std::pair{std::min(u, v), std::max(u, v)};
          if (used_edges.count(e)) continue;
          if (terminal(u) && u != terminals[0] && !tree.count(u)) continue;
          parent[static_cast<std::size_t>(v)] = u;
          if (v == terminals[k]) {
            hit = v;
            break;
          }
          q.push_back(v);
        }
      }
      if (hit < 0) {
        ok = false;
        break;
      }
      for (int v = hit; !tree.count(v); v = parent[static_cast<std::size_t>(v)]) {
        int u = parent[static_cast<std::size_t>(v)];
        edges.emplace_back(std::min(u, v), std::max(u, v));
        tree.insert(v);
      }
    }
    if (!ok) break;
    Tree t;
    for (auto [a, b] : edges) {
      used_edges.insert({a, b});
      t.push_back(make_edge(g.label(a), g.label(b)));
      for (int v : {a, b}) {
        if (!terminal(v)) used[static_cast<std::size_t>(v)] = 1;
      }
    }
    std::sort(t.begin(), t.end());
    p.trees.push_back(std::move(t));
    ++p.count;
  }
  return p;
}

}  // namespace

Packing max_stree_packing(const Graph& g, std::span<const Vertex> terminals, long budget) {
  if (terminals.size() < 2) throw InvalidArgument("max_stree_packing: need at least two terminals");
  PackingInstance inst{g, {}, {}, {}};
  for (Vertex t : terminals) {
    int i = g.index_of(t);
    if (i < 0) throw InvalidArgument("max_stree_packing: terminal not in graph");
    inst.terminals.push_back(i);
  }
  std::sort(inst.terminals.begin(), inst.terminals.end());
  if (std::adjacent_find(inst.terminals.begin(), inst.terminals.end()) != inst.terminals.end()) {
    throw InvalidArgument("max_stree_packing: terminals must be distinct");
  }
  if (g.order() > kExhaustivePackingOrder) {
    Packing p = greedy_packing(g, inst.terminals);
    p.exact = false;
    return p;
  }
  auto terminal = [&](int v) { return std::binary_search(inst.terminals.begin(), inst.terminals.end(), v); };
  for (int v = 0; v < g.order(); ++v) {
    if (!terminal(v)) inst.others.push_back(v);
  }
  for (int u : inst.terminals) {
    for (int v : g.neighbors(u)) {
      if (u < v && terminal(v)) inst.tedges.emplace_back(u, v);
    }
  }
  const std::size_t bits = inst.others.size() + inst.tedges.size();

  // Minimal connecting configurations: connected, and every single deletion
  // disconnects (connectivity is monotone in the configuration).
  std::vector<Mask> minimal;
  for (Mask m = 0; m < (Mask{1} << bits); ++m) {
    if (!inst.connects(m)) continue;
    bool is_min = true;
    for (std::size_t b = 0; b < bits && is_min; ++b) {
      if ((m >> b & 1U) && inst.connects(m & ~(Mask{1} << b))) is_min = false;
    }
    if (is_min) minimal.push_back(m);
  }

  int upper = g.order();
  for (int t : inst.terminals) upper = std::min(upper, static_cast<int>(g.neighbors(t).size()));

  std::unordered_map<Mask, int> memo;
  std::unordered_map<Mask, Mask> choice;
  long steps = 0;
  bool exhausted = false;
  std::function<int(Mask)> best = [&](Mask used) -> int {
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    if (++steps > budget) {
      exhausted = true;
      return 0;
    }
    int value = 0;
    Mask pick = 0;
    for (Mask c : minimal) {
      if (c & used) continue;
      int v = 1 + best(used | c);
      if (v > value) {
        value = v;
        pick = c;
      }
      if (exhausted || value >= upper) break;
    }
    memo[used] = value;
    choice[used] = pick;
    return value;
  };
  Packing p;
  p.count = best(0);
  p.exact = !exhausted;
  for (Mask used = 0; p.trees.size() < static_cast<std::size_t>(p.count);) {
    auto it = choice.find(used);
    if (it == choice.end() || it->second == 0) break;
    p.trees.push_back(inst.tree_of(it->second));
    used |= it->second;
  }
  if (exhausted) {
    Packing greedy = greedy_packing(g, inst.terminals);
    if (greedy.count > static_cast<int>(p.trees.size())) p = greedy;
    p.count = static_cast<int>(p.trees.size());
    p.exact = false;
  }
  return p;
}

// ---- cut search -----------------------------------------------------------

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(r);
}

namespace {

// Lexicographic unranking of k-subsets of {0..n-1}.
std::vector<int> unrank(std::uint64_t rank, int n, int k) {
  std::vector<int> c;
  int x = 0;
  for (int i = 0; i < k; ++i) {
    while (true) {
      std::uint64_t below = binomial(static_cast<std::uint64_t>(n - x - 1), static_cast<std::uint64_t>(k - i - 1));
      if (rank < below) break;
      rank -= below;
      ++x;
    }
    c.push_back(x++);
  }
  return c;
}

bool next_combination(std::vector<int>& c, int n) {
  int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++c[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

int count_components(const Graph& g, const std::vector<int>& removed, std::vector<char>& gone, std::vector<int>& stack,
                     int stop_at) {
  std::fill(gone.begin(), gone.end(), 0);
  for (int v : removed) gone[static_cast<std::size_t>(v)] = 1;
  int comps = 0;
  for (int s = 0; s < g.order(); ++s) {
    if (gone[static_cast<std::size_t>(s)]) continue;
    if (++comps >= stop_at) return comps;
    gone[static_cast<std::size_t>(s)] = 1;
    stack.assign(1, s);
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v : g.neighbors(u)) {
        if (!gone[static_cast<std::size_t>(v)]) {
          gone[static_cast<std::size_t>(v)] = 1;
          stack.push_back(v);
        }
      }
    }
  }
  return comps;
}

std::uint64_t check_budget(const Graph& g, int size, int r, std::uint64_t budget) {
  if (size < 0 || size > g.order()) throw InvalidArgument("exhaustive_cut_search: bad subset size");
  if (r < 1) throw InvalidArgument("exhaustive_cut_search: r must be positive");
  std::uint64_t total = binomial(static_cast<std::uint64_t>(g.order()), static_cast<std::uint64_t>(size));
  if (total > budget) {
    throw BudgetExceeded("exhaustive_cut_search: C(" + std::to_string(g.order()) + "," + std::to_string(size) +
                         ") = " + std::to_string(total) + " subsets exceeds budget " + std::to_string(budget));
  }
  return total;
}

CutWitness witness_of(const Graph& g, const std::vector<int>& c) {
  CutWitness w;
  for (int i : c) w.removed.push_back(g.label(i));
  w.census = component_census(g, w.removed);
  return w;
}

// First qualifying rank in [lo, hi), or hi.
std::uint64_t scan(const Graph& g, int size, int r, std::uint64_t lo, std::uint64_t hi) {
  if (lo >= hi) return hi;
  std::vector<int> c = unrank(lo, g.order(), size);
  std::vector<char> gone(static_cast<std::size_t>(g.order()));
  std::vector<int> stack;
  for (std::uint64_t rank = lo; rank < hi; ++rank) {
    if (count_components(g, c, gone, stack, r + 1) >= r + 1) return rank;
    next_combination(c, g.order());
  }
  return hi;
}

}  // namespace

std::optional<CutWitness> exhaustive_cut_search_serial(const Graph& g, int size, int r, std::uint64_t budget) {
  std::uint64_t total = check_budget(g, size, r, budget);
  std::uint64_t hit = scan(g, size, r, 0, total);
  if (hit == total) return std::nullopt;
  return witness_of(g, unrank(hit, g.order(), size));
}

std::optional<CutWitness> exhaustive_cut_search(const Graph& g, int size, int r, std::uint64_t budget) {
  std::uint64_t total = check_budget(g, size, r, budget);
  constexpr std::uint64_t kChunk = 4096;
  const auto chunks = static_cast<std::int64_t>((total + kChunk - 1) / kChunk);
  std::uint64_t hit = total;
#pragma omp parallel for schedule(dynamic) reduction(min : hit)
  for (std::int64_t i = 0; i < chunks; ++i) {
    std::uint64_t lo = static_cast<std::uint64_t>(i) * kChunk;
    std::uint64_t hi = std::min(total, lo + kChunk);
    std::uint64_t found = scan(g, size, r, lo, hi);
    if (found < hi) hit = std::min(hit, found);
  }
  if (hit == total) return std::nullopt;
  return witness_of(g, unrank(hit, g.order(), size));
}

}  // namespace dualcube::oracle
