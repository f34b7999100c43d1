#include "dualcube/menger.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

#include "dualcube/detail/unit_flow.hpp"
#include "dualcube/errors.hpp"

namespace dualcube {

namespace {

template <typename Adjacent>
bool simple_path(const Path& p, Adjacent adjacent) {
  if (p.empty()) return false;
  std::vector<Vertex> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (!adjacent(p[i - 1], p[i])) return false;
  }
  return true;
}

void ensure_path(const Graph& g, const Path& p) {
  if (!is_simple_path(g, p)) throw std::logic_error("menger: produced an invalid path");
}

// Vertex-split network: vertex i becomes in-node 2i and out-node 2i+1.
struct SplitNetwork {
  detail::UnitFlowNetwork net;
  int sink = -1;

  static int in(int i) { return 2 * i; }
  static int out(int i) { return 2 * i + 1; }
};

// `blocked[i]` marks vertices that may not be passed through (sources,
// targets). Paths start at out(source).
SplitNetwork make_split_network(const Graph& g, const std::vector<char>& blocked) {
  SplitNetwork s;
  s.net = detail::UnitFlowNetwork(2 * g.order() + 1);
  s.sink = 2 * g.order();
  for (int i = 0; i < g.order(); ++i) {
    if (!blocked[static_cast<std::size_t>(i)]) s.net.add_arc(SplitNetwork::in(i), SplitNetwork::out(i), 1);
  }
  for (int i = 0; i < g.order(); ++i) {
    for (int j : g.neighbors(i)) s.net.add_arc(SplitNetwork::out(i), SplitNetwork::in(j), 1);
  }
  return s;
}

// Follows flow from out(source) one unit at a time. Each interior vertex has
// exactly one unit through it, so the walk is forced after the first step.
std::vector<Path> decompose(const Graph& g, SplitNetwork& s, int source, const std::vector<char>& is_end) {
  std::vector<Path> paths;
  const auto& first = s.net.arcs(SplitNetwork::out(source));
  for (std::size_t a = 0; a < first.size(); ++a) {
    if (s.net.flow(SplitNetwork::out(source), static_cast<int>(a)) <= 0) continue;
    Path p{g.label(source)};
    int v = first[a].to / 2;
    while (true) {
      p.push_back(g.label(v));
      if (is_end[static_cast<std::size_t>(v)]) break;
      const auto& arcs = s.net.arcs(SplitNetwork::out(v));
      int next = -1;
      for (std::size_t b = 0; b < arcs.size(); ++b) {
        if (arcs[b].to != s.sink && arcs[b].to % 2 == 0 && s.net.flow(SplitNetwork::out(v), static_cast<int>(b)) > 0) {
          next = arcs[b].to / 2;
          break;
        }
      }
      if (next < 0) throw std::logic_error("menger: broken flow decomposition");
      v = next;
    }
    paths.push_back(std::move(p));
  }
  return paths;
}

// Minimum vertex separator read off a maximum flow. Edge arcs are unit in the
// network (keeps decomposition simple) but count as uncuttable here, so the
// cut lands on vertex arcs. A max flow stays maximum under that change because
// every unit still crosses a unit vertex or sink arc.
std::vector<Vertex> separator_of(const Graph& g, const SplitNetwork& s, int source, int skip = -1) {
  std::vector<char> seen(static_cast<std::size_t>(s.net.node_count()), 0);
  std::deque<int> queue{SplitNetwork::out(source)};
  seen[static_cast<std::size_t>(queue.front())] = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    bool from_out = u != s.sink && u % 2 == 1;
    for (const auto& a : s.net.arcs(u)) {
      bool edge_arc = from_out && a.original > 0 && a.to != s.sink;
      if ((a.capacity > 0 || edge_arc) && !seen[static_cast<std::size_t>(a.to)]) {
        seen[static_cast<std::size_t>(a.to)] = 1;
        queue.push_back(a.to);
      }
    }
  }
  std::vector<Vertex> cut;
  for (int i = 0; i < g.order(); ++i) {
    if (i == source || i == skip) continue;
    if (seen[static_cast<std::size_t>(SplitNetwork::in(i))] && !seen[static_cast<std::size_t>(SplitNetwork::out(i))]) {
      cut.push_back(g.label(i));
    }
  }
  return cut;
}

}  // namespace

bool is_simple_path(const Graph& g, const Path& p) {
  for (Vertex v : p) {
    if (!g.contains(v)) return false;
  }
  return simple_path(p, [&](Vertex a, Vertex b) { return g.adjacent(a, b); });
}

bool is_simple_path(const DualCube& d, const Path& p) {
  for (Vertex v : p) {
    if (!d.is_vertex(v)) return false;
  }
  return simple_path(p, [&](Vertex a, Vertex b) { return d.adjacent(a, b); });
}

namespace {

struct PairFlow {
  std::vector<Path> paths;
  std::vector<Vertex> separator;
};

PairFlow pair_flow(const Graph& g, Vertex x, Vertex y, int limit) {
  int ix = g.index_of(x);
  int iy = g.index_of(y);
  if (ix < 0 || iy < 0) throw InvalidArgument("disjoint_paths: endpoint not in graph");
  if (ix == iy) throw InvalidArgument("disjoint_paths: endpoints must differ");
  std::vector<char> blocked(static_cast<std::size_t>(g.order()), 0);
  blocked[static_cast<std::size_t>(ix)] = 1;
  blocked[static_cast<std::size_t>(iy)] = 1;
  SplitNetwork s = make_split_network(g, blocked);
  s.net.max_flow(SplitNetwork::out(ix), SplitNetwork::in(iy), limit);
  std::vector<char> is_end(static_cast<std::size_t>(g.order()), 0);
  is_end[static_cast<std::size_t>(iy)] = 1;
  PairFlow result;
  result.paths = decompose(g, s, ix, is_end);
  // adjacent endpoints cannot be separated
  if (!g.adjacent(x, y)) result.separator = separator_of(g, s, ix, iy);
  for (const auto& p : result.paths) ensure_path(g, p);
  return result;
}

}  // namespace

std::vector<Path> max_disjoint_paths(const Graph& g, Vertex x, Vertex y, int limit) {
  return pair_flow(g, x, y, limit).paths;
}

std::vector<Path> disjoint_paths(const Graph& g, Vertex x, Vertex y, int k) {
  if (k < 1) throw InvalidArgument("disjoint_paths: k must be positive");
  PairFlow flow = pair_flow(g, x, y, k);
  if (static_cast<int>(flow.paths.size()) < k) {
    int got = static_cast<int>(flow.paths.size());
    throw NotEnoughConnectivity("disjoint_paths: only " + std::to_string(got) + " of " + std::to_string(k) +
                                    " disjoint paths exist",
                                got, std::move(flow.separator));
  }
  return std::move(flow.paths);
}

Fan fan(const Graph& g, Vertex x, std::span<const Vertex> targets, int k) {
  if (k < 1) throw InvalidArgument("fan: k must be positive");
  int ix = g.index_of(x);
  if (ix < 0) throw InvalidArgument("fan: source not in graph");
  std::vector<Vertex> distinct(targets.begin(), targets.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  if (static_cast<int>(distinct.size()) < k) throw InvalidArgument("fan: fewer targets than k");

  Fan result;
  result.source = x;
  bool source_is_target = std::binary_search(distinct.begin(), distinct.end(), x);
  int needed = k;
  if (source_is_target) {
    result.paths.push_back(Path{x});
    result.targets.push_back(x);
    --needed;
  }
  if (needed > 0) {
    std::vector<char> blocked(static_cast<std::size_t>(g.order()), 0);
    std::vector<char> is_end(static_cast<std::size_t>(g.order()), 0);
    blocked[static_cast<std::size_t>(ix)] = 1;
    SplitNetwork s;
    std::vector<int> target_index;
    for (Vertex t : distinct) {
      if (t == x) continue;
      int it = g.index_of(t);
      if (it < 0) throw InvalidArgument("fan: target not in graph");
      blocked[static_cast<std::size_t>(it)] = 1;
      is_end[static_cast<std::size_t>(it)] = 1;
      target_index.push_back(it);
    }
    s = make_split_network(g, blocked);
    for (int it : target_index) s.net.add_arc(SplitNetwork::in(it), s.sink, 1);
    int got = s.net.max_flow(SplitNetwork::out(ix), s.sink, needed);
    if (got < needed) {
      int achieved = got + (source_is_target ? 1 : 0);
      throw NotEnoughConnectivity("fan: only " + std::to_string(achieved) + " of " + std::to_string(k) +
                                      " fan paths exist",
                                  achieved, separator_of(g, s, ix));
    }
    for (auto& p : decompose(g, s, ix, is_end)) {
      ensure_path(g, p);
      result.targets.push_back(p.back());
      result.paths.push_back(std::move(p));
    }
  }
  return result;
}

std::vector<Path> hypercube_pair_paths(const Hypercube& q, Vertex x, Vertex y) {
  if (q.dimension() < 2) throw InvalidArgument("hypercube_pair_paths: dimension must be at least 2");
  return disjoint_paths(q.graph(), x, y, q.dimension());
}

Path route_in_cluster(const DualCube& d, Vertex x, Vertex y) {
  ClusterRef c = d.cluster_of(x);
  if (d.cluster_of(y) != c) throw InvalidArgument("route_in_cluster: vertices lie in different clusters");
  Path p{x};
  Vertex cur = d.free_bits(x);
  Vertex goal = d.free_bits(y);
  for (int bit = d.order() - 2; bit >= 0; --bit) {
    Vertex m = Vertex{1} << bit;
    if ((cur ^ goal) & m) {
      cur ^= m;
      p.push_back(d.cluster_member(c, cur));
    }
  }
  return p;
}

Path path_in_cluster_union(const DualCube& d, std::span<const ClusterRef> clusters, Vertex x, Vertex y) {
  std::vector<ClusterRef> set(clusters.begin(), clusters.end());
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  bool has0 = std::any_of(set.begin(), set.end(), [](ClusterRef c) { return c.class_bit == 0; });
  bool has1 = std::any_of(set.begin(), set.end(), [](ClusterRef c) { return c.class_bit == 1; });
  if (!has0 || !has1) throw InvalidArgument("path_in_cluster_union: need clusters of both classes");
  auto member = [&](ClusterRef c) { return std::binary_search(set.begin(), set.end(), c); };
  ClusterRef cx = d.cluster_of(x);
  ClusterRef cy = d.cluster_of(y);
  if (!member(cx) || !member(cy)) throw InvalidArgument("path_in_cluster_union: endpoint outside the union");

  Path p;
  auto append = [&p](const Path& part) { p.insert(p.end(), part.begin(), part.end()); };
  if (cx == cy) {
    p = route_in_cluster(d, x, y);
  } else if (cx.class_bit == cy.class_bit) {
    ClusterRef via = *std::find_if(set.begin(), set.end(), [&](ClusterRef c) { return c.class_bit != cx.class_bit; });
    Vertex u = d.cross_vertex(cx, via);
    Vertex v = d.cross_vertex(cy, via);
    append(route_in_cluster(d, x, u));
    append(route_in_cluster(d, d.outside_neighbor(u), d.outside_neighbor(v)));
    append(route_in_cluster(d, v, y));
  } else {
    Vertex u = d.cross_vertex(cx, cy);
    append(route_in_cluster(d, x, u));
    append(route_in_cluster(d, d.outside_neighbor(u), y));
  }
  if (!is_simple_path(d, p)) throw std::logic_error("path_in_cluster_union: produced an invalid path");
  for (Vertex v : p) {
    if (!member(d.cluster_of(v))) throw std::logic_error("path_in_cluster_union: left the cluster union");
  }
  return p;
}

std::optional<Path> bfs_path(const Graph& g, Vertex x, Vertex y) {
  int ix = g.index_of(x);
  int iy = g.index_of(y);
  if (ix < 0 || iy < 0) return std::nullopt;
  std::vector<int> parent(static_cast<std::size_t>(g.order()), -1);
  parent[static_cast<std::size_t>(ix)] = ix;
  std::deque<int> queue{ix};
  while (!queue.empty() && parent[static_cast<std::size_t>(iy)] < 0) {
    int u = queue.front();
    queue.pop_front();
    for (int v : g.neighbors(u)) {
      if (parent[static_cast<std::size_t>(v)] < 0) {
        parent[static_cast<std::size_t>(v)] = u;
        queue.push_back(v);
      }
    }
  }
  if (parent[static_cast<std::size_t>(iy)] < 0) return std::nullopt;
  Path p;
  for (int v = iy; v != ix; v = parent[static_cast<std::size_t>(v)]) p.push_back(g.label(v));
  p.push_back(x);
  std::reverse(p.begin(), p.end());
  return p;
}

}  // namespace dualcube
