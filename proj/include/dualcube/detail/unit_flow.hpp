#pragma once

#include <cstdint>
#include <vector>

namespace dualcube::detail {

// Small-capacity flow network with BFS augmenting paths. Arcs are scanned in
// insertion order, so callers that insert arcs in label order get
// deterministic smallest-label-first augmentations.
class UnitFlowNetwork {
 public:
  struct Arc {
    int to;
    int capacity;   // residual
    int original;
    int reverse;    // index into arcs_[to]
  };

  explicit UnitFlowNetwork(int nodes = 0) : arcs_(static_cast<std::size_t>(nodes)) {}

  int add_node() {
    arcs_.emplace_back();
    return static_cast<int>(arcs_.size()) - 1;
  }
  int node_count() const { return static_cast<int>(arcs_.size()); }

  // Returns the arc's index within from's list.
  int add_arc(int from, int to, int capacity);

  // Augments until `limit` units have been pushed or no path remains.
  int max_flow(int source, int sink, int limit);

  const std::vector<Arc>& arcs(int node) const { return arcs_[static_cast<std::size_t>(node)]; }
  int flow(int node, int arc_index) const {
    const Arc& a = arcs_[static_cast<std::size_t>(node)][static_cast<std::size_t>(arc_index)];
    return a.original - a.capacity;
  }
  // Pushes one unit back along a flow-carrying arc (used while decomposing).
  void take(int node, int arc_index);

 private:
  std::vector<std::vector<Arc>> arcs_;
};

}  // namespace dualcube::detail
