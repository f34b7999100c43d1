#include "dualcube/compcut.hpp"

#include <algorithm>
#include <set>

#include "dualcube/errors.hpp"
#include "dualcube/oracle.hpp"
#include "dualcube/serialize.hpp"

namespace dualcube {

namespace {

void check_r(int n, int r) {
  if (n < 2) throw InvalidArgument("component cuts need n >= 2");
  if (r < 1 || r > n - 1) {
    throw InvalidArgument("r must lie in 1.." + std::to_string(n - 1) + ", got " + std::to_string(r));
  }
}

}  // namespace

int cut_size_formula(int n, int r) {
  check_r(n, r);
  return r * n - r * (r + 1) / 2 + 1;
}

CutSet component_cut(const DualCube& d, int r) {
  const int n = d.order();
  check_r(n, r);
  const Vertex u = 0;
  std::vector<Vertex> centres;
  for (int pos = 1; pos <= r; ++pos) centres.push_back(Label(u, d.width()).flipped(pos).bits());
  std::set<Vertex> removed;
  for (Vertex c : centres) {
    for (Vertex v : d.neighbors(c)) removed.insert(v);
  }
  for (Vertex c : centres) removed.erase(c);
  CutSet cut;
  cut.n = n;
  cut.r = r;
  cut.removed.assign(removed.begin(), removed.end());
  cut.census = verify_cut(d, cut.removed);
  return cut;
}

std::vector<std::size_t> verify_cut(const DualCube& d, std::span<const Vertex> removed) {
  for (Vertex v : removed) d.check_vertex(v);
  return oracle::component_census(d.graph(), removed);
}

bool verify_cut(const DualCube& d, const CutSet& cut) {
  auto census = verify_cut(d, cut.removed);
  if (census != cut.census) return false;
  if (static_cast<int>(cut.removed.size()) != cut_size_formula(d.order(), cut.r)) return false;
  auto singles = std::count(census.begin(), census.end(), std::size_t{1});
  return static_cast<int>(census.size()) >= cut.r + 1 && singles >= cut.r;
}

StructureReport structure_check(const DualCube& d, std::span<const Vertex> t, int k) {
  const int n = d.order();
  if (k < 1 || k > n - 1) throw InvalidArgument("structure_check: k must lie in 1..n-1");
  const int limit = k * n - k * (k + 1) / 2;
  if (static_cast<int>(t.size()) > limit) {
    throw InvalidArgument("structure_check: |T| = " + std::to_string(t.size()) + " exceeds " + std::to_string(limit));
  }
  StructureReport rep;
  rep.census = verify_cut(d, t);
  for (std::size_t i = 1; i < rep.census.size(); ++i) rep.small_total += rep.census[i];
  rep.holds = rep.small_total <= static_cast<std::size_t>(k - 1);
  return rep;
}

std::vector<Vertex> common_neighbors(const Hypercube& q, Vertex u, Vertex v) {
  if (u == v) throw InvalidArgument("common_neighbors: vertices must differ");
  const Graph& g = q.graph();
  int iu = g.index_of(u), iv = g.index_of(v);
  if (iu < 0 || iv < 0) throw InvalidArgument("common_neighbors: vertex outside the hypercube");
  std::vector<Vertex> out;
  auto a = g.neighbors(iu), b = g.neighbors(iv);
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

nlohmann::json to_json(const CutSet& cut, const DualCube& d) {
  return {{"n", cut.n}, {"r", cut.r}, {"removed", vertices_to_json(cut.removed, d.width())}, {"census", cut.census}};
}

}  // namespace dualcube
