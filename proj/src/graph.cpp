#include "dualcube/graph.hpp"

#include <algorithm>

#include "dualcube/errors.hpp"

namespace dualcube {

Graph::Graph(int width, std::vector<Vertex> labels, std::vector<std::vector<int>> adjacency)
    : width_(width), labels_(std::move(labels)), adjacency_(std::move(adjacency)) {
  if (adjacency_.size() != labels_.size()) {
    throw InvalidArgument("graph: adjacency size does not match vertex count");
  }
  if (!std::is_sorted(labels_.begin(), labels_.end()) ||
      std::adjacent_find(labels_.begin(), labels_.end()) != labels_.end()) {
    throw InvalidArgument("graph: labels must be strictly increasing");
  }
  identity_ = true;
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != i) {
      identity_ = false;
      break;
    }
  }
  std::size_t degree_sum = 0;
  for (auto& list : adjacency_) {
    std::sort(list.begin(), list.end());
    degree_sum += list.size();
  }
  edge_count_ = degree_sum / 2;
}

int Graph::index_of(Vertex v) const {
  if (identity_) return v < labels_.size() ? static_cast<int>(v) : -1;
  auto it = std::lower_bound(labels_.begin(), labels_.end(), v);
  if (it == labels_.end() || *it != v) return -1;
  return static_cast<int>(it - labels_.begin());
}

bool Graph::adjacent(Vertex a, Vertex b) const {
  int ia = index_of(a);
  int ib = index_of(b);
  if (ia < 0 || ib < 0) return false;
  auto list = neighbors(ia);
  return std::binary_search(list.begin(), list.end(), ib);
}

int Graph::degree(Vertex v) const {
  int i = index_of(v);
  return i < 0 ? 0 : static_cast<int>(neighbors(i).size());
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (int i = 0; i < order(); ++i) {
    for (int j : neighbors(i)) {
      if (i < j) out.emplace_back(label(i), label(j));
    }
  }
  return out;
}

Graph Graph::induced(std::span<const Vertex> vertices) const {
  std::vector<Vertex> keep(vertices.begin(), vertices.end());
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());

  std::vector<int> local(static_cast<std::size_t>(order()), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    int host = index_of(keep[i]);
    if (host < 0) throw InvalidArgument("induced: vertex " + to_bits(keep[i], width_) + " not in graph");
    local[static_cast<std::size_t>(host)] = static_cast<int>(i);
  }
  std::vector<std::vector<int>> adjacency(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    for (int nb : neighbors(index_of(keep[i]))) {
      int j = local[static_cast<std::size_t>(nb)];
      if (j >= 0) adjacency[i].push_back(j);
    }
  }
  return Graph(width_, std::move(keep), std::move(adjacency));
}

}  // namespace dualcube
