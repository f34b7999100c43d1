#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dualcube/label.hpp"

namespace dualcube {

using Edge = std::pair<Vertex, Vertex>;

inline Edge make_edge(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }

// Materialized simple undirected graph whose vertices carry fixed-width labels.
// Internally vertices are dense indices 0..order()-1 sorted by label; every
// neighbour list is sorted by label as well, so any traversal that walks
// neighbours in order breaks ties by smallest label.
class Graph {
 public:
  Graph() = default;
  // `labels` must be strictly increasing; `adjacency[i]` holds indices.
  Graph(int width, std::vector<Vertex> labels, std::vector<std::vector<int>> adjacency);

  int order() const { return static_cast<int>(labels_.size()); }
  int width() const { return width_; }
  std::size_t edge_count() const { return edge_count_; }

  Vertex label(int index) const { return labels_[static_cast<std::size_t>(index)]; }
  std::span<const Vertex> labels() const { return labels_; }
  std::span<const int> neighbors(int index) const {
    return adjacency_[static_cast<std::size_t>(index)];
  }

  // -1 when `v` is not a vertex.
  int index_of(Vertex v) const;
  bool contains(Vertex v) const { return index_of(v) >= 0; }
  bool adjacent(Vertex a, Vertex b) const;
  int degree(Vertex v) const;

  std::vector<Edge> edges() const;

  // Subgraph induced by `vertices` (any order, duplicates ignored); labels kept.
  Graph induced(std::span<const Vertex> vertices) const;

 private:
  int width_ = 1;
  bool identity_ = false;  // labels_[i] == i
  std::vector<Vertex> labels_;
  std::vector<std::vector<int>> adjacency_;
  std::size_t edge_count_ = 0;
};

}  // namespace dualcube
