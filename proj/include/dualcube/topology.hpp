#pragma once

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualcube/graph.hpp"
#include "dualcube/label.hpp"

namespace dualcube {

// Names one hypercube cluster of D_n. For class 0 the fixed bits are
// positions n..2n-2; for class 1 they are positions 1..n-1. In both cases
// `fixed_bits` holds those n-1 bits with the lowest position most significant.
struct ClusterRef {
  int class_bit = 0;
  Vertex fixed_bits = 0;

  friend bool operator==(const ClusterRef&, const ClusterRef&) = default;
  friend auto operator<=>(const ClusterRef&, const ClusterRef&) = default;
};

class Hypercube;

// The dual cube D_n. Adjacency is available lazily through neighbors() for any
// supported order; orders up to kMaxMaterializedOrder also carry a
// materialized Graph used by the flow and search routines.
class DualCube {
 public:
  static constexpr int kMaxOrder = 15;
  static constexpr int kMaxMaterializedOrder = 9;

  explicit DualCube(int n);

  int order() const { return n_; }
  int width() const { return 2 * n_ - 1; }
  std::size_t vertex_count() const { return std::size_t{1} << width(); }
  std::size_t clusters_per_class() const { return std::size_t{1} << (n_ - 1); }

  bool is_vertex(Vertex v) const { return (v >> width()) == 0; }
  std::vector<Vertex> neighbors(Vertex v) const;
  bool adjacent(Vertex a, Vertex b) const;

  Vertex outside_neighbor(Vertex v) const { return v ^ Vertex{1}; }
  int class_of(Vertex v) const { return static_cast<int>(v & 1U); }

  // Bits that vary inside v's cluster, as an (n-1)-bit value.
  Vertex free_bits(Vertex v) const;
  ClusterRef cluster_of(Vertex v) const;
  // Cluster that holds v's outside neighbour.
  ClusterRef outside_cluster(Vertex v) const { return cluster_of(outside_neighbor(v)); }

  bool in_cluster(Vertex v, ClusterRef c) const { return cluster_of(v) == c; }
  // Vertex of `c` whose free bits are `free`.
  Vertex cluster_member(ClusterRef c, Vertex free) const;
  std::vector<Vertex> cluster_vertices(ClusterRef c) const;
  // Class 0 clusters first, then class 1, each by fixed bits.
  std::vector<ClusterRef> clusters() const;
  std::vector<ClusterRef> clusters_of_class(int class_bit) const;

  // Endpoints (u in c0, w in c1) of the unique edge joining the two clusters.
  Edge cross_edge(ClusterRef c0, ClusterRef c1) const;
  // The vertex of `from` whose outside neighbour lies in `to` (opposite class).
  Vertex cross_vertex(ClusterRef from, ClusterRef to) const;

  Hypercube cluster_graph(ClusterRef c) const;

  // Throws InvalidArgument if the order is above kMaxMaterializedOrder.
  const Graph& graph() const;

  Label label(Vertex v) const { return Label(v, width()); }
  std::string str(Vertex v) const { return to_bits(v, width()); }
  std::string str(ClusterRef c) const;
  void check_vertex(Vertex v) const;
  void check_cluster(ClusterRef c) const;

 private:
  int n_;
  std::shared_ptr<const Graph> graph_;
};

// Q_m, optionally embedded into a host dual cube cluster.
class Hypercube {
 public:
  static constexpr int kMaxDimension = 20;

  explicit Hypercube(int m);
  // embedding[i] is the host label of local vertex i.
  Hypercube(int m, std::vector<Vertex> embedding);

  int dimension() const { return m_; }
  std::size_t vertex_count() const { return std::size_t{1} << m_; }
  const Graph& graph() const { return *graph_; }

  bool embedded() const { return !embedding_.empty(); }
  Vertex to_host(Vertex local) const;
  std::optional<Vertex> from_host(Vertex host) const;
  std::span<const Vertex> embedding() const { return embedding_; }

 private:
  int m_;
  std::shared_ptr<const Graph> graph_;
  std::vector<Vertex> embedding_;
  std::vector<std::pair<Vertex, Vertex>> reverse_;  // (host, local), sorted
};

Graph build_hypercube_graph(int m);
DualCube build_dual_cube(int n);

}  // namespace dualcube
