#pragma once

#include <span>
#include <vector>

#include "json.hpp"

#include "dualcube/topology.hpp"

namespace dualcube {

struct CutSet {
  int n = 0;
  int r = 0;
  std::vector<Vertex> removed;      // sorted
  std::vector<std::size_t> census;  // component sizes after deletion, largest first
};

// r*n - r(r+1)/2 + 1, for n >= 2 and 1 <= r <= n-1.
int cut_size_formula(int n, int r);

// Neighbourhood of u_1..u_r, where u is the all-zero vertex and u_i flips bit
// position i. Deleting it isolates every u_i. The census is filled in.
CutSet component_cut(const DualCube& d, int r);

// Exact census of D minus `removed`, largest first.
std::vector<std::size_t> verify_cut(const DualCube& d, std::span<const Vertex> removed);
// Recomputes the census and checks the CutSet's own claims (size, census,
// >= r+1 components, >= r singletons).
bool verify_cut(const DualCube& d, const CutSet& cut);

struct StructureReport {
  std::vector<std::size_t> census;
  std::size_t small_total = 0;  // vertices outside the largest component
  bool holds = false;           // small_total <= k-1
};

// Requires 1 <= k <= n-1 and |T| <= k*n - k(k+1)/2.
StructureReport structure_check(const DualCube& d, std::span<const Vertex> t, int k);

// N(u) & N(v) in Q_m (local labels).
std::vector<Vertex> common_neighbors(const Hypercube& q, Vertex u, Vertex v);

nlohmann::json to_json(const CutSet& cut, const DualCube& d);

}  // namespace dualcube
