#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "dualcube/detail/tree_draft.hpp"
#include "dualcube/detail/unit_flow.hpp"
#include "dualcube/errors.hpp"
#include "dualcube/menger.hpp"
#include "dualcube/streeforge.hpp"

namespace dualcube {

namespace {

constexpr int kAttempts = 64;
constexpr long kColouringBudget = 20'000'000;

struct Automorphism {
  std::vector<int> perm;  // bit i of the image is bit perm[i] of the source
  Vertex mask = 0;

  Vertex apply(Vertex v) const {
    Vertex r = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if ((v >> perm[i]) & 1U) r |= Vertex{1} << i;
    }
    return r ^ mask;
  }
  Vertex invert(Vertex v) const {
    v ^= mask;
    Vertex r = 0;
    for (std::size_t i = 0; i < perm.size(); ++i) {
      if ((v >> i) & 1U) r |= Vertex{1} << perm[i];
    }
    return r;
  }
};

constexpr int kFreeVertex = -1;
constexpr int kAttached = -2;
constexpr int kPending = -3;

// Joins terminal v to every one of the k trees by disjoint paths through free
// vertices. A path ends on its first tree vertex; edges from v straight to an
// already attached terminal pass through a unit edge node so each is used once.
bool attach(const Graph& g, Vertex v, std::vector<int>& owner, std::vector<detail::TreeDraft>& trees) {
  const int order = g.order();
  const int k = static_cast<int>(trees.size());
  auto in = [](Vertex u) { return 2 * static_cast<int>(u); };
  auto out = [](Vertex u) { return 2 * static_cast<int>(u) + 1; };
  detail::UnitFlowNetwork net(2 * order + k + 1);
  const int tree_base = 2 * order;
  const int sink = tree_base + k;
  std::map<std::pair<int, int>, Vertex> via;

  for (int u = 0; u < order; ++u) {
    if (owner[static_cast<std::size_t>(u)] == kFreeVertex) net.add_arc(in(static_cast<Vertex>(u)), out(static_cast<Vertex>(u)), 1);
  }
  for (int ui = 0; ui < order; ++ui) {
    auto u = static_cast<Vertex>(ui);
    if (u != v && owner[u] != kFreeVertex) continue;
    int exit = out(u);
    for (int wi : g.neighbors(ui)) {
      auto w = static_cast<Vertex>(wi);
      int ow = owner[w];
      if (ow == kFreeVertex) {
        net.add_arc(exit, in(w), 1);
      } else if (ow >= 0) {
        via[{exit, net.add_arc(exit, tree_base + ow, 1)}] = w;
      } else if (ow == kAttached) {
        int from = exit;
        if (u == v) {
          from = net.add_node();
          net.add_arc(exit, from, 1);
        }
        for (int t = 0; t < k; ++t) via[{from, net.add_arc(from, tree_base + t, 1)}] = w;
      }
    }
  }
  for (int t = 0; t < k; ++t) net.add_arc(tree_base + t, sink, 1);
  if (net.max_flow(out(v), sink, k) < k) return false;

  auto next_arc = [&](int node) {
    const auto& arcs = net.arcs(node);
    for (std::size_t a = 0; a < arcs.size(); ++a) {
      if (net.flow(node, static_cast<int>(a)) > 0) return static_cast<int>(a);
    }
    return -1;
  };
  while (true) {
    int a = next_arc(out(v));
    if (a < 0) break;
    Path p{v};
    int node = out(v);
    while (true) {
      int arc = next_arc(node);
      int to = net.arcs(node)[static_cast<std::size_t>(arc)].to;
      net.take(node, arc);
      if (to >= tree_base && to < sink) {
        p.push_back(via.at({node, arc}));
        int t = to - tree_base;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) owner[p[i]] = t;
        trees[static_cast<std::size_t>(t)].add_path(p);
        net.take(to, next_arc(to));
        break;
      }
      if (to < tree_base) {
        p.push_back(static_cast<Vertex>(to / 2));
        node = to + 1;  // in -> out
        net.take(to, next_arc(to));
      } else {
        node = to;  // edge node
      }
    }
  }
  return true;
}

std::optional<std::vector<detail::TreeDraft>> grow(const Graph& g, int m, std::array<Vertex, 4> s, int drop) {
  auto paths = max_disjoint_paths(g, s[0], s[1], m);
  if (static_cast<int>(paths.size()) < m) return std::nullopt;
  if (drop < 0) {
    drop = 0;
    for (int i = 1; i < m; ++i) {
      if (paths[static_cast<std::size_t>(i)].size() >= paths[static_cast<std::size_t>(drop)].size()) drop = i;
    }
  }
  std::vector<int> owner(static_cast<std::size_t>(g.order()), kFreeVertex);
  std::vector<detail::TreeDraft> trees;
  for (int i = 0; i < m; ++i) {
    if (i == drop) continue;
    const Path& p = paths[static_cast<std::size_t>(i)];
    for (std::size_t j = 1; j + 1 < p.size(); ++j) owner[p[j]] = static_cast<int>(trees.size());
    trees.emplace_back();
    trees.back().add_path(p);
  }
  owner[s[0]] = owner[s[1]] = kAttached;
  owner[s[2]] = owner[s[3]] = kPending;
  for (int i = 2; i < 4; ++i) {
    if (!attach(g, s[static_cast<std::size_t>(i)], owner, trees)) return std::nullopt;
    owner[s[static_cast<std::size_t>(i)]] = kAttached;
  }
  return trees;
}

bool disjoint(const std::vector<Tree>& trees, std::span<const Vertex> terminals) {
  std::set<Vertex> seen;
  std::set<Edge> edges;
  for (const auto& t : trees) {
    for (Vertex v : tree_vertices(t)) {
      if (std::find(terminals.begin(), terminals.end(), v) == terminals.end() && !seen.insert(v).second) return false;
    }
    for (const Edge& e : t) {
      if (!edges.insert(e).second) return false;
    }
  }
  return true;
}

// Exhaustive colouring of non-terminal vertices and terminal-terminal edges
// with k tree colours (0 = unused), with first-use symmetry breaking.
std::optional<std::vector<Tree>> colouring_search(const Graph& g, std::span<const Vertex> s, int k) {
  auto is_terminal = [&](Vertex v) { return std::find(s.begin(), s.end(), v) != s.end(); };
  struct Item {
    bool edge;
    Vertex a, b;
  };
  std::vector<Item> items;
  for (Vertex t : s) {
    for (int u : g.neighbors(g.index_of(t))) {
      Vertex lu = g.label(u);
      if (is_terminal(lu)) {
        if (t < lu) items.push_back({true, t, lu});
      } else if (std::none_of(items.begin(), items.end(), [&](const Item& it) { return !it.edge && it.a == lu; })) {
        items.push_back({false, lu, lu});
      }
    }
  }
  for (int i = 0; i < g.order(); ++i) {
    Vertex v = g.label(i);
    if (!is_terminal(v) &&
        std::none_of(items.begin(), items.end(), [&](const Item& it) { return !it.edge && it.a == v; })) {
      items.push_back({false, v, v});
    }
  }
  std::map<Vertex, int> colour;
  std::map<Edge, int> edge_colour;
  // The item after which every incidence of terminal t is decided.
  std::vector<std::vector<Vertex>> closes(items.size());
  for (Vertex t : s) {
    std::size_t lastpos = 0;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const Item& it = items[i];
      bool touches = it.edge ? (it.a == t || it.b == t) : g.adjacent(it.a, t);
      if (touches) lastpos = i;
    }
    closes[lastpos].push_back(t);
  }
  auto terminal_ok = [&](Vertex t) {
    std::vector<char> has(static_cast<std::size_t>(k) + 1, 0);
    for (int u : g.neighbors(g.index_of(t))) {
      Vertex lu = g.label(u);
      int c = is_terminal(lu) ? edge_colour[make_edge(t, lu)] : colour[lu];
      has[static_cast<std::size_t>(c)] = 1;
    }
    for (int c = 1; c <= k; ++c) {
      if (!has[static_cast<std::size_t>(c)]) return false;
    }
    return true;
  };
  auto colour_class = [&](int c) {
    detail::TreeDraft draft;
    for (const Edge& e : g.edges()) {
      bool ta = is_terminal(e.first), tb = is_terminal(e.second);
      if (ta && tb) {
        if (edge_colour[e] == c) draft.add_edge(e.first, e.second);
      } else if ((ta || colour[e.first] == c) && (tb || colour[e.second] == c)) {
        draft.add_edge(e.first, e.second);
      }
    }
    return draft;
  };
  long budget = kColouringBudget;
  std::vector<Tree> found;
  std::function<bool(std::size_t, int)> search = [&](std::size_t at, int used) -> bool {
    if (--budget < 0) return false;
    if (at == items.size()) {
      std::vector<Tree> trees;
      for (int c = 1; c <= k; ++c) {
        try {
          trees.push_back(colour_class(c).finalize(s));
        } catch (const std::logic_error&) {
          return false;
        }
      }
      found = std::move(trees);
      return true;
    }
    const Item& it = items[at];
    for (int c = 0; c <= std::min(k, used + 1); ++c) {
      if (it.edge) {
        edge_colour[make_edge(it.a, it.b)] = c;
      } else {
        colour[it.a] = c;
      }
      bool ok = std::all_of(closes[at].begin(), closes[at].end(), terminal_ok);
      if (ok && search(at + 1, std::max(used, c))) return true;
    }
    if (it.edge) {
      edge_colour.erase(make_edge(it.a, it.b));
    } else {
      colour.erase(it.a);
    }
    return false;
  };
  if (search(0, 0)) return found;
  return std::nullopt;
}

}  // namespace

TreeSet hypercube_strees4(const Hypercube& q, std::span<const Vertex> terminals) {
  const int m = q.dimension();
  if (m < 3) throw InvalidArgument("hypercube_strees4 needs dimension >= 3");
  if (terminals.size() != 4) throw InvalidArgument("hypercube_strees4 needs four terminals");
  std::vector<Vertex> s(terminals.begin(), terminals.end());
  std::sort(s.begin(), s.end());
  if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw InvalidArgument("terminals must be distinct");
  for (Vertex v : s) {
    if (v >= q.vertex_count()) throw InvalidArgument("terminal outside the hypercube");
  }
  const Graph& g = q.graph();

  TreeSet result;
  result.width = m;
  result.terminals = s;
  result.case_tag = "hypercube";

  std::vector<std::array<Vertex, 4>> orders;
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      std::array<Vertex, 2> rest{};
      int r = 0;
      for (int l = 0; l < 4; ++l) {
        if (l != i && l != j) rest[static_cast<std::size_t>(r++)] = s[static_cast<std::size_t>(l)];
      }
      orders.push_back({s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)], rest[0], rest[1]});
      orders.push_back({s[static_cast<std::size_t>(i)], s[static_cast<std::size_t>(j)], rest[1], rest[0]});
    }
  }

  std::mt19937 rng(0x5eed'cafeU);
  Automorphism sigma;
  sigma.perm.resize(static_cast<std::size_t>(m));
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    std::iota(sigma.perm.begin(), sigma.perm.end(), 0);
    sigma.mask = 0;
    if (attempt > 0) {
      std::shuffle(sigma.perm.begin(), sigma.perm.end(), rng);
      sigma.mask = static_cast<Vertex>(rng() & ((Vertex{1} << m) - 1));
    }
    for (const auto& o : orders) {
      std::array<Vertex, 4> mapped{};
      for (std::size_t i = 0; i < 4; ++i) mapped[i] = sigma.apply(o[i]);
      auto drafts = grow(g, m, mapped, attempt == 0 ? -1 : attempt % m);
      if (!drafts) continue;
      std::vector<Vertex> ms(mapped.begin(), mapped.end());
      std::sort(ms.begin(), ms.end());
      std::vector<Tree> trees;
      for (const auto& d : *drafts) {
        Tree t;
        for (const auto& [a, b] : d.finalize(ms)) t.push_back(make_edge(sigma.invert(a), sigma.invert(b)));
        std::sort(t.begin(), t.end());
        trees.push_back(std::move(t));
      }
      if (!disjoint(trees, s)) continue;
      result.trees = std::move(trees);
      return result;
    }
  }
  if (m <= 4) {
    if (auto trees = colouring_search(g, s, m - 1)) {
      result.trees = std::move(*trees);
      result.case_tag = "hypercube:exhaustive";
      return result;
    }
  }
  throw SearchIncomplete("hypercube_strees4: no packing of " + std::to_string(m - 1) + " trees found");
}

}  // namespace dualcube
