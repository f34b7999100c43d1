#include "dualcube/streeforge.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

#include "dualcube/detail/tree_draft.hpp"
#include "dualcube/errors.hpp"
#include "dualcube/menger.hpp"

namespace dualcube {

ClusterReservation::ClusterReservation(const DualCube& d) : d_(&d) {
  owners_[0].assign(d.clusters_per_class(), kFree);
  owners_[1].assign(d.clusters_per_class(), kFree);
}

int ClusterReservation::owner(ClusterRef c) const {
  d_->check_cluster(c);
  return owners_[c.class_bit][c.fixed_bits];
}

void ClusterReservation::share(ClusterRef c) {
  d_->check_cluster(c);
  owners_[c.class_bit][c.fixed_bits] = kShared;
}

void ClusterReservation::reserve(ClusterRef c, int tree) {
  int& slot = owners_[c.class_bit][c.fixed_bits];
  d_->check_cluster(c);
  if (slot == tree) return;
  if (slot != kFree) {
    throw std::logic_error("reservation: cluster " + d_->str(c) + " already taken by " + std::to_string(slot));
  }
  slot = tree;
}

ClusterRef ClusterReservation::claim_next(int class_bit, int tree) {
  auto& list = owners_[class_bit];
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (list[i] == kFree) {
      list[i] = tree;
      return ClusterRef{class_bit, static_cast<Vertex>(i)};
    }
  }
  throw ReservationExhausted("no free class-" + std::to_string(class_bit) + " cluster left");
}

std::vector<ClusterRef> ClusterReservation::available_to(int tree) const {
  std::vector<ClusterRef> out;
  for (int c = 0; c < 2; ++c) {
    for (std::size_t i = 0; i < owners_[c].size(); ++i) {
      int o = owners_[c][i];
      if (o == kFree || o == tree) out.push_back(ClusterRef{c, static_cast<Vertex>(i)});
    }
  }
  return out;
}

namespace {

using Keep = std::function<bool(Vertex)>;

void require_order(const DualCube& d) {
  if (d.order() < 4) throw UnsupportedOrder("S-tree constructions need n >= 4");
}

class Construction {
 public:
  Construction(const DualCube& d, std::span<const Vertex> terminals)
      : d(d),
        n(d.order()),
        k(n - 1),
        last(n - 2),
        terminals(terminals.begin(), terminals.end()),
        reservation(d),
        trees(static_cast<std::size_t>(k)),
        cube_(build_hypercube_graph(n - 1)) {
    for (Vertex t : terminals) reservation.share(d.cluster_of(t));
  }

  const DualCube& d;
  const int n;
  const int k;
  const int last;
  std::vector<Vertex> terminals;
  ClusterReservation reservation;
  std::vector<detail::TreeDraft> trees;
  std::string tag;

  Vertex out(Vertex v) const { return d.outside_neighbor(v); }
  ClusterRef cl(Vertex v) const { return d.cluster_of(v); }
  ClusterRef outc(Vertex v) const { return d.outside_cluster(v); }
  detail::TreeDraft& tree(int t) { return trees[static_cast<std::size_t>(t)]; }

  void link(int t, Vertex v) { tree(t).add_edge(v, out(v)); }

  std::vector<Vertex> neighbors_in_cluster(Vertex v) const {
    std::vector<Vertex> out;
    for (Vertex u : d.neighbors(v)) {
      if (cl(u) == cl(v)) out.push_back(u);
    }
    return out;
  }

  std::vector<Path> pair_paths(ClusterRef c, Vertex x, Vertex y, int count, const Keep& keep = {}) const {
    Graph g = subgraph(c, keep);
    auto paths = disjoint_paths(g, d.free_bits(x), d.free_bits(y), count);
    for (auto& p : paths) p = to_host(c, p);
    return paths;
  }

  // target -> path from src
  std::map<Vertex, Path> fan_to(ClusterRef c, Vertex src, std::span<const Vertex> targets,
                                const Keep& keep = {}) const {
    Graph g = subgraph(c, keep);
    std::vector<Vertex> local;
    for (Vertex t : targets) local.push_back(d.free_bits(t));
    Fan f = fan(g, d.free_bits(src), local, static_cast<int>(local.size()));
    std::map<Vertex, Path> out;
    for (std::size_t i = 0; i < f.paths.size(); ++i) {
      out.emplace(d.cluster_member(c, f.targets[i]), to_host(c, f.paths[i]));
    }
    return out;
  }

  Path detour(ClusterRef c, Vertex from, Vertex to, std::span<const Vertex> avoid) const {
    std::set<Vertex> banned(avoid.begin(), avoid.end());
    Graph g = subgraph(c, [&](Vertex v) { return !banned.count(v); });
    auto p = bfs_path(g, d.free_bits(from), d.free_bits(to));
    if (!p) throw std::logic_error("streeforge: detour inside " + d.str(c) + " is blocked");
    return to_host(c, *p);
  }

  // Joins all points inside the region with union-of-cluster routes.
  void connect(int t, std::vector<ClusterRef> region, const std::vector<Vertex>& points) {
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (region.size() == 1) {
        tree(t).add_path(route_in_cluster(d, points[0], points[i]));
      } else {
        tree(t).add_path(path_in_cluster_union(d, region, points[0], points[i]));
      }
    }
  }

  void connect_residual(int t, const std::vector<Vertex>& points) { connect(t, reservation.available_to(t), points); }

  TreeSet finish() {
    TreeSet ts;
    ts.width = d.width();
    ts.terminals = terminals;
    ts.case_tag = tag;
    std::map<Vertex, int> used;
    std::set<Edge> edges;
    for (int t = 0; t < k; ++t) {
      Tree tr = tree(t).finalize(terminals);
      for (Vertex v : tree_vertices(tr)) {
        if (std::binary_search(terminals.begin(), terminals.end(), v)) continue;
        auto [it, fresh] = used.emplace(v, t);
        if (!fresh) {
          throw std::logic_error("streeforge(" + tag + "): trees " + std::to_string(it->second) + " and " +
                                 std::to_string(t) + " share " + d.str(v));
        }
      }
      for (const Edge& e : tr) {
        if (!edges.insert(e).second) throw std::logic_error("streeforge(" + tag + "): repeated edge");
      }
      ts.trees.push_back(std::move(tr));
    }
    return ts;
  }

 private:
  Graph subgraph(ClusterRef c, const Keep& keep) const {
    std::vector<Vertex> local;
    for (Vertex f = 0; f < static_cast<Vertex>(cube_.order()); ++f) {
      if (!keep || keep(d.cluster_member(c, f))) local.push_back(f);
    }
    return cube_.induced(local);
  }

  Path to_host(ClusterRef c, const Path& local) const {
    Path p;
    for (Vertex v : local) p.push_back(d.cluster_member(c, v));
    return p;
  }

  Graph cube_;
};

// Chooses one vertex per path, accepted by `accept`, pairwise distinct.
// Interior vertices are preferred (smallest label); a path whose interior has
// no acceptable vertex falls back to one of its endpoints, each endpoint
// serving at most one path.
std::optional<std::vector<Vertex>> choose_pivots(const std::vector<Path>& paths,
                                                 const std::function<bool(Vertex)>& accept) {
  std::vector<Vertex> pivots(paths.size());
  std::vector<std::size_t> needy;
  for (std::size_t i = 0; i < paths.size(); ++i) {
    const Path& p = paths[i];
    std::optional<Vertex> best;
    for (std::size_t j = 1; j + 1 < p.size(); ++j) {
      if (accept(p[j]) && (!best || p[j] < *best)) best = p[j];
    }
    if (best) {
      pivots[i] = *best;
    } else {
      needy.push_back(i);
    }
  }
  std::set<Vertex> taken;
  std::function<bool(std::size_t)> assign = [&](std::size_t at) {
    if (at == needy.size()) return true;
    const Path& p = paths[needy[at]];
    for (Vertex e : {std::min(p.front(), p.back()), std::max(p.front(), p.back())}) {
      if (!accept(e) || taken.count(e)) continue;
      taken.insert(e);
      pivots[needy[at]] = e;
      if (assign(at + 1)) return true;
      taken.erase(e);
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return pivots;
}

std::vector<Vertex> choose_pivots_or_throw(const std::vector<Path>& paths, const std::function<bool(Vertex)>& accept,
                                           const std::string& where) {
  auto p = choose_pivots(paths, accept);
  if (!p) throw std::logic_error("streeforge: no admissible pivots in " + where);
  return *p;
}

// Splits a cluster holding three terminals along the leftmost free dimension
// separating two of them. Trees 0..n-3 receive a path x..z in one half, a
// pivot edge across the split, and a fan path from y in the other half.
struct TripleSplit {
  Vertex x = 0, y = 0, z = 0;
  std::vector<Vertex> y_ends;  // y_i, one per tree 0..n-3
};

TripleSplit split_triple(Construction& c, ClusterRef ca, std::array<Vertex, 3> t) {
  const DualCube& d = c.d;
  TripleSplit s{t[0], t[1], t[2], {}};
  Vertex diff = d.free_bits(s.x) ^ d.free_bits(s.y);
  Vertex mask = Vertex{1};
  while (diff >> 1) {
    diff >>= 1;
    mask <<= 1;
  }
  if ((d.free_bits(s.z) & mask) == (d.free_bits(s.y) & mask)) std::swap(s.x, s.y);
  Vertex side = d.free_bits(s.x) & mask;
  auto partner = [&](Vertex v) { return d.cluster_member(ca, d.free_bits(v) ^ mask); };

  int count = c.n - 2;
  auto paths = c.pair_paths(ca, s.x, s.z, count, [&](Vertex v) { return (d.free_bits(v) & mask) == side; });
  auto pivots = choose_pivots_or_throw(paths, [&](Vertex v) { return partner(v) != s.y; }, "triple split");
  for (Vertex p : pivots) s.y_ends.push_back(partner(p));
  auto fans = c.fan_to(ca, s.y, s.y_ends, [&](Vertex v) { return (d.free_bits(v) & mask) != side; });
  for (int i = 0; i < count; ++i) {
    auto& tr = c.tree(i);
    tr.add_path(paths[static_cast<std::size_t>(i)]);
    tr.add_edge(pivots[static_cast<std::size_t>(i)], s.y_ends[static_cast<std::size_t>(i)]);
    tr.add_path(fans.at(s.y_ends[static_cast<std::size_t>(i)]));
  }
  return s;
}

struct Groups {
  // Clusters with their terminals; largest group first, then cluster order.
  std::vector<std::pair<ClusterRef, std::vector<Vertex>>> list;
};

Groups group_terminals(const DualCube& d, std::span<const Vertex> s) {
  std::map<ClusterRef, std::vector<Vertex>> m;
  for (Vertex v : s) m[d.cluster_of(v)].push_back(v);
  Groups g;
  for (auto& [c, vs] : m) g.list.emplace_back(c, vs);
  std::stable_sort(g.list.begin(), g.list.end(),
                   [](const auto& a, const auto& b) { return a.second.size() > b.second.size(); });
  return g;
}

// ---- two clusters -------------------------------------------------------

void two_31_same(Construction& c, ClusterRef ca, std::array<Vertex, 3> triple, ClusterRef cb, Vertex w) {
  c.tag = "two:3+1-same";
  TripleSplit s = split_triple(c, ca, triple);
  int m = c.n - 2;
  std::vector<Vertex> ends;
  for (int i = 0; i < m; ++i) {
    ClusterRef di = c.outc(s.y_ends[static_cast<std::size_t>(i)]);
    c.reservation.reserve(di, i);
    ends.push_back(c.d.cross_vertex(cb, di));
  }
  ClusterRef spare = c.reservation.claim_next(1 - ca.class_bit, c.last);
  ends.push_back(c.d.cross_vertex(cb, spare));
  auto fans = c.fan_to(cb, w, ends);
  for (int i = 0; i < m; ++i) {
    Vertex yi = s.y_ends[static_cast<std::size_t>(i)];
    Vertex wi = ends[static_cast<std::size_t>(i)];
    c.tree(i).add_path(fans.at(wi));
    c.link(i, yi);
    c.link(i, wi);
    c.connect(i, {c.outc(yi)}, {c.out(yi), c.out(wi)});
  }
  Vertex wl = ends.back();
  c.tree(c.last).add_path(fans.at(wl));
  for (Vertex v : {s.x, s.y, s.z, wl}) c.link(c.last, v);
  c.connect_residual(c.last, {c.out(s.x), c.out(s.y), c.out(s.z), c.out(wl)});
}

void two_31_cross(Construction& c, ClusterRef ca, std::array<Vertex, 3> triple, ClusterRef cb, Vertex w) {
  c.tag = "two:3+1-cross";
  TripleSplit s = split_triple(c, ca, triple);
  const DualCube& d = c.d;
  int m = c.n - 2;
  Vertex toward_a = d.cross_vertex(cb, ca);
  std::vector<Vertex> nbrs = c.neighbors_in_cluster(w);
  std::vector<Vertex> spokes;
  Vertex w_last = 0;
  auto it = std::find(nbrs.begin(), nbrs.end(), toward_a);
  if (it != nbrs.end()) {
    w_last = *it;
    nbrs.erase(it);
    spokes = nbrs;
  } else {
    w_last = nbrs.back();
    nbrs.pop_back();
    spokes = nbrs;
  }

  auto pair_up = [&](int i, Vertex yi, Vertex wi) {
    c.reservation.reserve(c.outc(yi), i);
    c.reservation.reserve(c.outc(wi), i);
    c.link(i, yi);
    c.tree(i).add_edge(w, wi);
    c.link(i, wi);
    c.connect(i, {c.outc(wi), c.outc(yi)}, {c.out(wi), c.out(yi)});
  };
  auto last_via_neighbor = [&](std::vector<Vertex> points) {
    c.tree(c.last).add_edge(w, w_last);
    c.link(c.last, w_last);
    points.push_back(c.out(w_last));
    c.connect_residual(c.last, points);
  };

  std::optional<int> hit;
  for (int i = 0; i < m; ++i) {
    if (c.outc(s.y_ends[static_cast<std::size_t>(i)]) == cb) hit = i;
  }

  if (!hit) {
    for (int i = 0; i < m; ++i) pair_up(i, s.y_ends[static_cast<std::size_t>(i)], spokes[static_cast<std::size_t>(i)]);
    std::optional<Vertex> bridge;
    for (Vertex t : {s.x, s.y, s.z}) {
      if (c.outc(t) == cb) bridge = t;
    }
    std::vector<Vertex> points;
    for (Vertex t : {s.x, s.y, s.z}) {
      if (t == bridge) continue;
      c.link(c.last, t);
      points.push_back(c.out(t));
    }
    if (bridge) {
      Vertex b = *bridge;
      if (c.out(b) != w) {
        c.tag += ":free:bridge";
        c.link(c.last, b);
        c.tree(c.last).add_path(c.detour(cb, c.out(b), w, spokes));
        c.link(c.last, w);
        points.push_back(c.out(w));
        c.connect_residual(c.last, points);
      } else {
        c.tag += ":free:bridge-is-w";
        c.link(c.last, b);
        last_via_neighbor(points);
      }
    } else if (c.outc(w) != ca) {
      c.tag += ":free:clear-w";
      c.link(c.last, w);
      points.push_back(c.out(w));
      c.connect_residual(c.last, points);
    } else {
      c.tag += ":free:clear-nbr";
      last_via_neighbor(points);
    }
    return;
  }

  int h = *hit;
  Vertex yh = s.y_ends[static_cast<std::size_t>(h)];
  c.link(h, yh);
  bool is_w = c.out(yh) == w;
  if (!is_w) c.tree(h).add_path(c.detour(cb, c.out(yh), w, spokes));
  c.tag += is_w ? ":pivot-hit-is-w" : ":pivot-hit";
  std::size_t j = 0;
  for (int i = 0; i < m; ++i) {
    if (i == h) continue;
    pair_up(i, s.y_ends[static_cast<std::size_t>(i)], spokes[j++]);
  }
  std::vector<Vertex> points;
  for (Vertex t : {s.x, s.y, s.z}) {
    c.link(c.last, t);
    points.push_back(c.out(t));
  }
  if (!is_w) {
    c.link(c.last, w);
    points.push_back(c.out(w));
    c.connect_residual(c.last, points);
  } else {
    last_via_neighbor(points);
  }
}

void two_22_same(Construction& c, ClusterRef ca, Vertex x, Vertex y, ClusterRef cb, Vertex z, Vertex w) {
  c.tag = "two:2+2-same";
  auto accept_all = [](Vertex) { return true; };
  auto pa = c.pair_paths(ca, x, y, c.k);
  auto pb = c.pair_paths(cb, z, w, c.k);
  auto xa = choose_pivots_or_throw(pa, accept_all, "2+2 pair");
  auto xb = choose_pivots_or_throw(pb, accept_all, "2+2 pair");

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<char> used_a(pa.size(), 0), used_b(pb.size(), 0);
  for (std::size_t i = 0; i < pa.size(); ++i) {
    for (std::size_t j = 0; j < pb.size(); ++j) {
      if (!used_b[j] && c.outc(xa[i]) == c.outc(xb[j])) {
        pairs.emplace_back(i, j);
        used_a[i] = used_b[j] = 1;
        break;
      }
    }
  }
  bool any_shared = !pairs.empty();
  std::size_t j = 0;
  for (std::size_t i = 0; i < pa.size(); ++i) {
    if (used_a[i]) continue;
    while (used_b[j]) ++j;
    pairs.emplace_back(i, j);
    used_b[j] = 1;
  }
  c.tag += any_shared ? ":shared" : ":separate";

  for (int t = 0; t < c.k; ++t) {
    auto [i, jj] = pairs[static_cast<std::size_t>(t)];
    Vertex u = xa[i], v = xb[jj];
    c.tree(t).add_path(pa[i]);
    c.tree(t).add_path(pb[jj]);
    c.link(t, u);
    c.link(t, v);
    c.reservation.reserve(c.outc(u), t);
    c.reservation.reserve(c.outc(v), t);
  }
  for (int t = 0; t < c.k; ++t) {
    auto [i, jj] = pairs[static_cast<std::size_t>(t)];
    Vertex u = xa[i], v = xb[jj];
    if (c.outc(u) == c.outc(v)) {
      c.connect(t, {c.outc(u)}, {c.out(u), c.out(v)});
    } else {
      ClusterRef via = c.reservation.claim_next(ca.class_bit, t);
      c.connect(t, {c.outc(u), c.outc(v), via}, {c.out(u), c.out(v)});
    }
  }
}

void two_22_cross(Construction& c, ClusterRef ca, Vertex x, Vertex y, ClusterRef cb, Vertex z, Vertex w) {
  c.tag = "two:2+2-cross";
  auto pa = c.pair_paths(ca, x, y, c.k);
  auto pb = c.pair_paths(cb, z, w, c.k);
  auto xa = choose_pivots_or_throw(pa, [&](Vertex v) { return c.outc(v) != cb; }, "2+2 cross");
  auto xb = choose_pivots_or_throw(pb, [&](Vertex v) { return c.outc(v) != ca; }, "2+2 cross");
  for (int t = 0; t < c.k; ++t) {
    auto i = static_cast<std::size_t>(t);
    c.tree(t).add_path(pa[i]);
    c.tree(t).add_path(pb[i]);
    c.link(t, xa[i]);
    c.link(t, xb[i]);
    c.reservation.reserve(c.outc(xa[i]), t);
    c.reservation.reserve(c.outc(xb[i]), t);
    c.connect(t, {c.outc(xa[i]), c.outc(xb[i])}, {c.out(xa[i]), c.out(xb[i])});
  }
}

// ---- three clusters -----------------------------------------------------

// Fans z out to `ends` inside its cluster and adds the paths plus outward links.
void fan_single(Construction& c, Vertex z, const std::vector<Vertex>& ends) {
  auto fans = c.fan_to(c.cl(z), z, ends);
  for (int t = 0; t < c.k; ++t) {
    Vertex e = ends[static_cast<std::size_t>(t)];
    c.tree(t).add_path(fans.at(e));
    c.link(t, e);
  }
}

void three_same(Construction& c, ClusterRef ca, Vertex x, Vertex y, Vertex z, Vertex w) {
  c.tag = "three:2+1+1-same";
  auto paths = c.pair_paths(ca, x, y, c.k);
  auto piv = choose_pivots_or_throw(paths, [](Vertex) { return true; }, "three same");
  std::vector<Vertex> ze, we;
  for (int t = 0; t < c.k; ++t) {
    ClusterRef a = c.outc(piv[static_cast<std::size_t>(t)]);
    c.reservation.reserve(a, t);
    ze.push_back(c.d.cross_vertex(c.cl(z), a));
    we.push_back(c.d.cross_vertex(c.cl(w), a));
  }
  fan_single(c, z, ze);
  fan_single(c, w, we);
  for (int t = 0; t < c.k; ++t) {
    auto i = static_cast<std::size_t>(t);
    c.tree(t).add_path(paths[i]);
    c.link(t, piv[i]);
    c.connect(t, {c.outc(piv[i])}, {c.out(piv[i]), c.out(ze[i]), c.out(we[i])});
  }
}

void three_mixed(Construction& c, ClusterRef ca, Vertex x, Vertex y, Vertex z, Vertex w) {
  c.tag = "three:2+1+1-mixed";
  ClusterRef cw = c.cl(w);
  auto paths = c.pair_paths(ca, x, y, c.k);
  auto piv = choose_pivots_or_throw(paths, [&](Vertex v) { return c.outc(v) != cw; }, "three mixed");
  std::vector<Vertex> ze, we;
  std::vector<ClusterRef> as, bs;
  for (int t = 0; t < c.k; ++t) {
    ClusterRef a = c.outc(piv[static_cast<std::size_t>(t)]);
    c.reservation.reserve(a, t);
    as.push_back(a);
    ze.push_back(c.d.cross_vertex(c.cl(z), a));
  }
  for (int t = 0; t < c.k; ++t) {
    ClusterRef b = c.reservation.claim_next(ca.class_bit, t);
    bs.push_back(b);
    we.push_back(c.d.cross_vertex(cw, b));
  }
  fan_single(c, z, ze);
  fan_single(c, w, we);
  for (int t = 0; t < c.k; ++t) {
    auto i = static_cast<std::size_t>(t);
    c.tree(t).add_path(paths[i]);
    c.link(t, piv[i]);
    c.connect(t, {as[i], bs[i]}, {c.out(piv[i]), c.out(ze[i]), c.out(we[i])});
  }
}

void three_opposite(Construction& c, ClusterRef ca, Vertex x, Vertex y, Vertex z, Vertex w) {
  c.tag = "three:2+1+1-opposite";
  ClusterRef cz = c.cl(z), cw = c.cl(w);
  auto paths = c.pair_paths(ca, x, y, c.k);
  auto avoid_singles = [&](Vertex v) { return c.outc(v) != cz && c.outc(v) != cw; };

  if (auto piv = choose_pivots(paths, avoid_singles)) {
    c.tag += ":pivots";
    std::vector<Vertex> ze, we;
    std::vector<ClusterRef> bs;
    for (int t = 0; t < c.k; ++t) c.reservation.reserve(c.outc((*piv)[static_cast<std::size_t>(t)]), t);
    for (int t = 0; t < c.k; ++t) {
      ClusterRef b = c.reservation.claim_next(ca.class_bit, t);
      bs.push_back(b);
      ze.push_back(c.d.cross_vertex(cz, b));
      we.push_back(c.d.cross_vertex(cw, b));
    }
    fan_single(c, z, ze);
    fan_single(c, w, we);
    for (int t = 0; t < c.k; ++t) {
      auto i = static_cast<std::size_t>(t);
      Vertex p = (*piv)[i];
      c.tree(t).add_path(paths[i]);
      c.link(t, p);
      c.connect(t, {c.outc(p), bs[i]}, {c.out(p), c.out(ze[i]), c.out(we[i])});
    }
    return;
  }

  // Only the direct edge x-y lacks a pivot: its ends lead into the two single
  // clusters, so that edge becomes a tree of its own.
  auto direct = std::find_if(paths.begin(), paths.end(), [](const Path& p) { return p.size() == 2; });
  if (direct == paths.end()) throw std::logic_error("three opposite: pivots failed without a direct edge");
  Vertex a = c.outc(x) == cz ? x : y;
  Vertex b = a == x ? y : x;
  if (c.outc(a) != cz || c.outc(b) != cw) throw std::logic_error("three opposite: unexpected direct edge");
  std::vector<Path> others;
  for (auto it = paths.begin(); it != paths.end(); ++it) {
    if (it != direct) others.push_back(*it);
  }
  auto piv = choose_pivots_or_throw(others, avoid_singles, "three opposite (edge)");

  auto spokes = [&](Vertex centre, Vertex skip) {
    std::vector<Vertex> out;
    for (Vertex u : c.neighbors_in_cluster(centre)) {
      if (u != skip && static_cast<int>(out.size()) < c.n - 2) out.push_back(u);
    }
    return out;
  };
  std::vector<Vertex> zs = spokes(z, c.out(a));
  std::vector<Vertex> ws = spokes(w, c.out(b));

  c.tree(0).add_edge(a, b);
  c.link(0, a);
  c.link(0, b);
  c.tree(0).add_path(c.detour(cz, c.out(a), z, zs));
  c.tree(0).add_path(c.detour(cw, c.out(b), w, ws));

  std::vector<std::pair<Vertex, Vertex>> pairs;
  std::vector<char> used_w(ws.size(), 0), used_z(zs.size(), 0);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    for (std::size_t j = 0; j < ws.size(); ++j) {
      if (!used_w[j] && c.outc(zs[i]) == c.outc(ws[j])) {
        pairs.emplace_back(zs[i], ws[j]);
        used_z[i] = used_w[j] = 1;
        break;
      }
    }
  }
  c.tag += pairs.empty() ? ":edge:separate" : ":edge:shared";
  std::size_t j = 0;
  for (std::size_t i = 0; i < zs.size(); ++i) {
    if (used_z[i]) continue;
    while (used_w[j]) ++j;
    pairs.emplace_back(zs[i], ws[j]);
    used_w[j] = 1;
  }

  for (int t = 1; t < c.k; ++t) {
    auto i = static_cast<std::size_t>(t - 1);
    Vertex p = piv[i];
    auto [zi, wi] = pairs[i];
    c.reservation.reserve(c.outc(p), t);
    c.reservation.reserve(c.outc(zi), t);
    c.reservation.reserve(c.outc(wi), t);
    c.tree(t).add_path(others[i]);
    c.link(t, p);
    c.tree(t).add_edge(z, zi);
    c.link(t, zi);
    c.tree(t).add_edge(w, wi);
    c.link(t, wi);
    c.connect(t, {c.outc(p), c.outc(zi), c.outc(wi)}, {c.out(p), c.out(zi), c.out(wi)});
  }
}

// ---- four clusters ------------------------------------------------------

void four_clusters(Construction& c, const std::vector<Vertex>& same, const std::vector<Vertex>& other, int cls) {
  // `same` terminals sit in class `cls` clusters, `other` in the opposite class.
  std::vector<ClusterRef> as, bs;
  for (int t = 0; t < c.k; ++t) as.push_back(c.reservation.claim_next(1 - cls, t));
  if (!other.empty()) {
    for (int t = 0; t < c.k; ++t) bs.push_back(c.reservation.claim_next(cls, t));
  }
  std::vector<std::vector<Vertex>> points(static_cast<std::size_t>(c.k));
  auto spread = [&](Vertex v, const std::vector<ClusterRef>& targets) {
    std::vector<Vertex> ends;
    for (ClusterRef r : targets) ends.push_back(c.d.cross_vertex(c.cl(v), r));
    fan_single(c, v, ends);
    for (std::size_t t = 0; t < ends.size(); ++t) points[t].push_back(c.out(ends[t]));
  };
  for (Vertex v : same) spread(v, as);
  for (Vertex v : other) spread(v, bs);
  for (int t = 0; t < c.k; ++t) {
    auto i = static_cast<std::size_t>(t);
    if (other.empty()) {
      c.connect(t, {as[i]}, points[i]);
    } else {
      c.connect(t, {as[i], bs[i]}, points[i]);
    }
  }
}

void check_terminals(const DualCube& d, const TerminalSet& s, std::size_t size) {
  require_order(d);
  if (s.size() != size) throw InvalidArgument("expected " + std::to_string(size) + " terminals");
  for (Vertex v : s.vertices()) d.check_vertex(v);
}

}  // namespace

TreeSet strees_one_cluster(const DualCube& d, const TerminalSet& s) {
  check_terminals(d, s, 4);
  if (s.cluster_count() != 1) throw InvalidArgument("terminals are not in one cluster");
  Construction c(d, s.vertices());
  c.tag = "one-cluster";
  ClusterRef home = d.cluster_of(s.vertices()[0]);
  Hypercube q = d.cluster_graph(home);
  std::vector<Vertex> local;
  for (Vertex v : s.vertices()) local.push_back(d.free_bits(v));
  TreeSet inner = hypercube_strees4(q, local);
  for (std::size_t t = 0; t < inner.trees.size(); ++t) {
    for (const auto& [a, b] : inner.trees[t]) {
      c.tree(static_cast<int>(t)).add_edge(d.cluster_member(home, a), d.cluster_member(home, b));
    }
  }
  std::vector<Vertex> points;
  for (Vertex v : s.vertices()) {
    c.link(c.last, v);
    points.push_back(d.outside_neighbor(v));
  }
  c.connect_residual(c.last, points);
  return c.finish();
}

TreeSet strees_two_clusters(const DualCube& d, const TerminalSet& s) {
  check_terminals(d, s, 4);
  if (s.cluster_count() != 2) throw InvalidArgument("terminals are not in two clusters");
  Construction c(d, s.vertices());
  Groups g = group_terminals(d, s.vertices());
  auto& [ca, va] = g.list[0];
  auto& [cb, vb] = g.list[1];
  bool same = ca.class_bit == cb.class_bit;
  if (va.size() == 3) {
    std::array<Vertex, 3> triple{va[0], va[1], va[2]};
    if (same) {
      two_31_same(c, ca, triple, cb, vb[0]);
    } else {
      two_31_cross(c, ca, triple, cb, vb[0]);
    }
  } else if (same) {
    two_22_same(c, ca, va[0], va[1], cb, vb[0], vb[1]);
  } else {
    two_22_cross(c, ca, va[0], va[1], cb, vb[0], vb[1]);
  }
  return c.finish();
}

TreeSet strees_three_clusters(const DualCube& d, const TerminalSet& s) {
  check_terminals(d, s, 4);
  if (s.cluster_count() != 3) throw InvalidArgument("terminals are not in three clusters");
  Construction c(d, s.vertices());
  Groups g = group_terminals(d, s.vertices());
  ClusterRef ca = g.list[0].first;
  Vertex x = g.list[0].second[0], y = g.list[0].second[1];
  Vertex z = g.list[1].second[0], w = g.list[2].second[0];
  int same = (d.class_of(z) == ca.class_bit) + (d.class_of(w) == ca.class_bit);
  if (same == 2) {
    three_same(c, ca, x, y, z, w);
  } else if (same == 1) {
    if (d.class_of(z) != ca.class_bit) std::swap(z, w);
    three_mixed(c, ca, x, y, z, w);
  } else {
    three_opposite(c, ca, x, y, z, w);
  }
  return c.finish();
}

TreeSet strees_four_clusters(const DualCube& d, const TerminalSet& s) {
  check_terminals(d, s, 4);
  if (s.cluster_count() != 4) throw InvalidArgument("terminals are not in four clusters");
  Construction c(d, s.vertices());
  std::vector<Vertex> by_class[2];
  for (Vertex v : s.vertices()) by_class[d.class_of(v)].push_back(v);
  int major = by_class[1].size() > by_class[0].size() ? 1 : 0;
  const auto& same = by_class[major];
  const auto& other = by_class[1 - major];
  c.tag = other.empty() ? "four:same" : other.size() == 1 ? "four:3+1" : "four:2+2";
  four_clusters(c, same, other, major);
  return c.finish();
}

TreeSet strees4(const DualCube& d, const TerminalSet& s) {
  check_terminals(d, s, 4);
  switch (s.cluster_count()) {
    case 1: return strees_one_cluster(d, s);
    case 2: return strees_two_clusters(d, s);
    case 3: return strees_three_clusters(d, s);
    default: return strees_four_clusters(d, s);
  }
}

TreeSet strees3(const DualCube& d, const TerminalSet& s) {
  check_terminals(d, s, 3);
  std::vector<Vertex> base(s.vertices().begin(), s.vertices().end());
  std::vector<Vertex> candidates;
  for (Vertex t : base) {
    for (Vertex u : d.neighbors(t)) {
      if (!s.contains(u) && std::find(candidates.begin(), candidates.end(), u) == candidates.end()) {
        candidates.push_back(u);
      }
    }
  }
  for (Vertex aux : candidates) {
    std::vector<Vertex> four = base;
    four.push_back(aux);
    TreeSet full = strees4(d, TerminalSet(d, four));
    TreeSet out;
    out.width = full.width;
    out.terminals = base;
    out.case_tag = full.case_tag;
    std::set<Vertex> seen;
    bool clash = false;
    for (const auto& tr : full.trees) {
      Tree pruned = detail::prune_to_terminals(tr, base);
      for (Vertex v : tree_vertices(pruned)) {
        if (!s.contains(v) && !seen.insert(v).second) clash = true;
      }
      out.trees.push_back(std::move(pruned));
    }
    if (!clash) return out;
  }
  throw std::logic_error("strees3: every auxiliary terminal left a shared vertex");
}

}  // namespace dualcube
