#pragma once

#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "dualcube/graph.hpp"
#include "dualcube/topology.hpp"

namespace dualcube {

// Vertex sequence; consecutive entries adjacent, no repeats. A single vertex
// is a valid path of length zero.
using Path = std::vector<Vertex>;

struct Fan {
  Vertex source = 0;
  std::vector<Vertex> targets;  // targets[i] is the end of paths[i]
  std::vector<Path> paths;
};

bool is_simple_path(const Graph& g, const Path& p);
bool is_simple_path(const DualCube& d, const Path& p);

// Up to `limit` internally disjoint x-y paths from unit-capacity max-flow on
// the vertex-split graph. Paths come out ordered by their second vertex.
std::vector<Path> max_disjoint_paths(const Graph& g, Vertex x, Vertex y,
                                     int limit = std::numeric_limits<int>::max());

// Exactly k internally disjoint x-y paths, or NotEnoughConnectivity carrying
// the achievable count and a minimum separator.
std::vector<Path> disjoint_paths(const Graph& g, Vertex x, Vertex y, int k);

// k internally disjoint paths from x to distinct members of `targets`, with
// interiors avoiding targets and x. If x itself is a target it is served by
// the zero-length path {x}.
Fan fan(const Graph& g, Vertex x, std::span<const Vertex> targets, int k);

// The m disjoint paths between two vertices of Q_m (labels local to q).
std::vector<Path> hypercube_pair_paths(const Hypercube& q, Vertex x, Vertex y);

// Dimension-order route between two vertices of one cluster, fixing the
// leftmost differing free bit first.
Path route_in_cluster(const DualCube& d, Vertex x, Vertex y);

// Path from x to y that stays inside the union of `clusters`. Needs at least
// one cluster of each class.
Path path_in_cluster_union(const DualCube& d, std::span<const ClusterRef> clusters, Vertex x, Vertex y);

// Breadth-first shortest path; nullopt when y is unreachable.
std::optional<Path> bfs_path(const Graph& g, Vertex x, Vertex y);

}  // namespace dualcube
