#pragma once

#include <span>
#include <vector>

#include "dualcube/topology.hpp"
#include "dualcube/tree_set.hpp"

namespace dualcube {

// Bookkeeping for which tree may route through which cluster. Terminal
// clusters are shared: every tree may touch them, but only along paths the
// construction plans explicitly, so they never count as routing space.
class ClusterReservation {
 public:
  static constexpr int kFree = -1;
  static constexpr int kShared = -2;

  explicit ClusterReservation(const DualCube& d);

  int owner(ClusterRef c) const;
  bool is_free(ClusterRef c) const { return owner(c) == kFree; }

  void share(ClusterRef c);
  // Re-reserving for the same tree is a no-op; anything else is a logic error.
  void reserve(ClusterRef c, int tree);
  // Smallest free cluster of the class; throws ReservationExhausted.
  ClusterRef claim_next(int class_bit, int tree);

  // Clusters that are free or owned by `tree`.
  std::vector<ClusterRef> available_to(int tree) const;

 private:
  const DualCube* d_;
  std::vector<int> owners_[2];
};

// n-1 internally disjoint S-trees in D_n for |S| = 4, n >= 4.
TreeSet strees4(const DualCube& d, const TerminalSet& s);
// n-1 internally disjoint S-trees for |S| = 3, n >= 4: add an auxiliary
// terminal, build four-terminal trees, prune back.
TreeSet strees3(const DualCube& d, const TerminalSet& s);

// Branches of strees4, selected by how S meets the clusters.
TreeSet strees_one_cluster(const DualCube& d, const TerminalSet& s);
TreeSet strees_two_clusters(const DualCube& d, const TerminalSet& s);
TreeSet strees_three_clusters(const DualCube& d, const TerminalSet& s);
TreeSet strees_four_clusters(const DualCube& d, const TerminalSet& s);

// m-1 internally disjoint trees connecting four vertices of Q_m, m >= 3.
// Terminals and result use q's local labels. Randomized search with a fixed
// seed; throws SearchIncomplete if it gives up.
TreeSet hypercube_strees4(const Hypercube& q, std::span<const Vertex> terminals);

}  // namespace dualcube
