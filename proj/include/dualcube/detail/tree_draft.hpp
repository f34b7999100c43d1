#pragma once

#include <map>
#include <set>
#include <span>
#include <vector>

#include "dualcube/graph.hpp"
#include "dualcube/menger.hpp"
#include "dualcube/tree_set.hpp"

namespace dualcube::detail {

// Edge soup that a constructor accumulates for one tree. finalize() extracts a
// spanning tree of the soup and trims non-terminal leaves.
class TreeDraft {
 public:
  void add_edge(Vertex a, Vertex b);
  void add_path(const Path& p);
  void add_vertex(Vertex v) { vertices_.insert(v); }

  const std::set<Vertex>& vertices() const { return vertices_; }
  bool contains(Vertex v) const { return vertices_.count(v) != 0; }

  // Throws std::logic_error if the soup does not connect the terminals.
  Tree finalize(std::span<const Vertex> terminals) const;

 private:
  std::set<Vertex> vertices_;
  std::set<Edge> edges_;
};

// Removes non-terminal leaves until none remain.
Tree prune_to_terminals(const Tree& t, std::span<const Vertex> terminals);

}  // namespace dualcube::detail
