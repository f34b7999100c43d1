#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "dualcube/graph.hpp"
#include "dualcube/topology.hpp"
#include "dualcube/tree_set.hpp"

// Brute-force ground truth. Nothing here calls into the constructors or their
// routing helpers; only the graph model is shared.
namespace dualcube::oracle {

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;  // empty when passing
};

struct VerificationReport {
  std::string subject;
  std::vector<Check> checks;

  bool overall() const;
  const Check* failure() const;  // first failing check, if any
};

nlohmann::json to_json(const VerificationReport& r);

// Local connectivity between distinct vertices (adjacent pairs count the edge).
int local_connectivity(const Graph& g, Vertex x, Vertex y);

// Minimum local connectivity over non-adjacent pairs; |V|-1 for complete graphs.
int vertex_connectivity(const Graph& g);
int vertex_connectivity_serial(const Graph& g);

// Tree checks: edges exist, each tree connected, acyclic and spanning S;
// non-terminal vertices and all edges used by at most one tree; tree count
// equals `expected` when given.
VerificationReport verify_tree_set(const Graph& g, const TreeSet& ts, std::optional<int> expected = std::nullopt);
// Uses D_n adjacency directly and expects n-1 trees.
VerificationReport verify_tree_set(const DualCube& d, const TreeSet& ts);

struct Packing {
  int count = 0;
  bool exact = false;
  std::vector<Tree> trees;  // a packing achieving `count`
};

inline constexpr int kExhaustivePackingOrder = 16;
inline constexpr long kDefaultPackingBudget = 50'000'000;

// Maximum number of internally disjoint S-trees. Exhaustive over minimal
// connecting configurations when |V| <= 16 and the search finishes inside
// `budget` steps; otherwise a greedy lower bound with exact = false.
Packing max_stree_packing(const Graph& g, std::span<const Vertex> terminals, long budget = kDefaultPackingBudget);

// Sizes of the components of g minus `removed`, largest first.
std::vector<std::size_t> component_census(const Graph& g, std::span<const Vertex> removed);

struct CutWitness {
  std::vector<Vertex> removed;
  std::vector<std::size_t> census;
};

inline constexpr std::uint64_t kDefaultCutBudget = 50'000'000;

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// A `size`-subset whose removal leaves >= r+1 components (smallest in
// colexicographic rank order), or nullopt. Throws BudgetExceeded when
// C(|V|, size) > budget.
std::optional<CutWitness> exhaustive_cut_search(const Graph& g, int size, int r,
                                                std::uint64_t budget = kDefaultCutBudget);
std::optional<CutWitness> exhaustive_cut_search_serial(const Graph& g, int size, int r,
                                                       std::uint64_t budget = kDefaultCutBudget);

}  // namespace dualcube::oracle
