#include "dualcube/detail/unit_flow.hpp"

#include <deque>
#include <limits>

namespace dualcube::detail {

int UnitFlowNetwork::add_arc(int from, int to, int capacity) {
  auto& out = arcs_[static_cast<std::size_t>(from)];
  auto& in = arcs_[static_cast<std::size_t>(to)];
  int index = static_cast<int>(out.size());
  int back = static_cast<int>(in.size()) + (from == to ? 1 : 0);
  out.push_back(Arc{to, capacity, capacity, back});
  in.push_back(Arc{from, 0, 0, index});
  return index;
}

int UnitFlowNetwork::max_flow(int source, int sink, int limit) {
  int total = 0;
  std::vector<std::pair<int, int>> parent(arcs_.size());
  while (total < limit) {
    std::fill(parent.begin(), parent.end(), std::pair<int, int>{-1, -1});
    parent[static_cast<std::size_t>(source)] = {source, -1};
    std::deque<int> queue{source};
    while (!queue.empty() && parent[static_cast<std::size_t>(sink)].first < 0) {
      int u = queue.front();
      queue.pop_front();
      const auto& out = arcs_[static_cast<std::size_t>(u)];
      for (std::size_t i = 0; i < out.size(); ++i) {
        const Arc& a = out[i];
        if (a.capacity > 0 && parent[static_cast<std::size_t>(a.to)].first < 0) {
          parent[static_cast<std::size_t>(a.to)] = {u, static_cast<int>(i)};
          queue.push_back(a.to);
        }
      }
    }
    if (parent[static_cast<std::size_t>(sink)].first < 0) break;
    int bottleneck = std::numeric_limits<int>::max();
    for (int v = sink; v != source;) {
      auto [u, i] = parent[static_cast<std::size_t>(v)];
      bottleneck = std::min(bottleneck, arcs_[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)].capacity);
      v = u;
    }
    bottleneck = std::min(bottleneck, limit - total);
    for (int v = sink; v != source;) {
      auto [u, i] = parent[static_cast<std::size_t>(v)];
      Arc& a = arcs_[static_cast<std::size_t>(u)][static_cast<std::size_t>(i)];
      a.capacity -= bottleneck;
      arcs_[static_cast<std::size_t>(v)][static_cast<std::size_t>(a.reverse)].capacity += bottleneck;
      v = u;
    }
    total += bottleneck;
  }
  return total;
}

void UnitFlowNetwork::take(int node, int arc_index) {
  Arc& a = arcs_[static_cast<std::size_t>(node)][static_cast<std::size_t>(arc_index)];
  a.capacity += 1;
  arcs_[static_cast<std::size_t>(a.to)][static_cast<std::size_t>(a.reverse)].capacity -= 1;
}

}  // namespace dualcube::detail
