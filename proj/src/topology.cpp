#include "dualcube/topology.hpp"

#include <algorithm>

#include "dualcube/errors.hpp"

namespace dualcube {

namespace {

// Label layout, most significant first: A (positions 1..n-1), B (positions
// n..2n-2), class bit (position 2n-1). Class 0 clusters fix B, class 1 fix A.
struct Parts {
  Vertex a;
  Vertex b;
  int cls;
};

Parts split(Vertex v, int n) {
  Vertex mask = (Vertex{1} << (n - 1)) - 1;
  return {(v >> n) & mask, (v >> 1) & mask, static_cast<int>(v & 1U)};
}

Vertex join(Vertex a, Vertex b, int cls, int n) {
  return (a << n) | (b << 1) | static_cast<Vertex>(cls);
}

}  // namespace

Graph build_hypercube_graph(int m) {
  if (m < 0 || m > Hypercube::kMaxDimension) throw InvalidArgument("hypercube dimension out of range");
  std::size_t count = std::size_t{1} << m;
  std::vector<Vertex> labels(count);
  std::vector<std::vector<int>> adjacency(count);
  for (std::size_t v = 0; v < count; ++v) {
    labels[v] = static_cast<Vertex>(v);
    for (int bit = 0; bit < m; ++bit) adjacency[v].push_back(static_cast<int>(v ^ (std::size_t{1} << bit)));
  }
  return Graph(std::max(m, 1), std::move(labels), std::move(adjacency));
}

DualCube::DualCube(int n) : n_(n) {
  if (n < 2 || n > kMaxOrder) {
    throw InvalidArgument("dual cube order must be in 2.." + std::to_string(kMaxOrder) +
                          ", got " + std::to_string(n));
  }
  if (n <= kMaxMaterializedOrder) {
    std::size_t count = vertex_count();
    std::vector<Vertex> labels(count);
    std::vector<std::vector<int>> adjacency(count);
    for (std::size_t v = 0; v < count; ++v) {
      labels[v] = static_cast<Vertex>(v);
      for (Vertex u : neighbors(static_cast<Vertex>(v))) adjacency[v].push_back(static_cast<int>(u));
    }
    graph_ = std::make_shared<const Graph>(width(), std::move(labels), std::move(adjacency));
  }
}

DualCube build_dual_cube(int n) { return DualCube(n); }

void DualCube::check_vertex(Vertex v) const {
  if (!is_vertex(v)) throw InvalidArgument("not a vertex of D_" + std::to_string(n_));
}

void DualCube::check_cluster(ClusterRef c) const {
  if ((c.class_bit != 0 && c.class_bit != 1) || (c.fixed_bits >> (n_ - 1)) != 0) {
    throw InvalidArgument("not a cluster of D_" + std::to_string(n_));
  }
}

std::vector<Vertex> DualCube::neighbors(Vertex v) const {
  check_vertex(v);
  std::vector<Vertex> out;
  out.reserve(static_cast<std::size_t>(n_));
  // Class 0 flips a bit of A (integer bits n..2n-2); class 1 flips a bit of B
  // (integer bits 1..n-1). The cross edge flips the class bit.
  int base = (v & 1U) == 0 ? n_ : 1;
  for (int j = 0; j < n_ - 1; ++j) out.push_back(v ^ (Vertex{1} << (base + j)));
  out.push_back(v ^ Vertex{1});
  std::sort(out.begin(), out.end());
  return out;
}

bool DualCube::adjacent(Vertex a, Vertex b) const {
  if (!is_vertex(a) || !is_vertex(b)) return false;
  Vertex diff = a ^ b;
  if (diff == 0 || (diff & (diff - 1)) != 0) return false;
  if (diff == 1) return true;
  Parts pa = split(a, n_);
  Parts pb = split(b, n_);
  if (pa.cls != pb.cls) return false;
  return pa.cls == 0 ? pa.b == pb.b : pa.a == pb.a;
}

Vertex DualCube::free_bits(Vertex v) const {
  Parts p = split(v, n_);
  return p.cls == 0 ? p.a : p.b;
}

ClusterRef DualCube::cluster_of(Vertex v) const {
  check_vertex(v);
  Parts p = split(v, n_);
  return ClusterRef{p.cls, p.cls == 0 ? p.b : p.a};
}

Vertex DualCube::cluster_member(ClusterRef c, Vertex free) const {
  check_cluster(c);
  return c.class_bit == 0 ? join(free, c.fixed_bits, 0, n_) : join(c.fixed_bits, free, 1, n_);
}

std::vector<Vertex> DualCube::cluster_vertices(ClusterRef c) const {
  std::vector<Vertex> out;
  out.reserve(clusters_per_class());
  for (Vertex f = 0; f < clusters_per_class(); ++f) out.push_back(cluster_member(c, f));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ClusterRef> DualCube::clusters() const {
  auto out = clusters_of_class(0);
  auto ones = clusters_of_class(1);
  out.insert(out.end(), ones.begin(), ones.end());
  return out;
}

std::vector<ClusterRef> DualCube::clusters_of_class(int class_bit) const {
  std::vector<ClusterRef> out;
  for (Vertex f = 0; f < clusters_per_class(); ++f) out.push_back(ClusterRef{class_bit, f});
  return out;
}

Edge DualCube::cross_edge(ClusterRef c0, ClusterRef c1) const {
  check_cluster(c0);
  check_cluster(c1);
  if (c0.class_bit != 0 || c1.class_bit != 1) {
    throw InvalidArgument("cross_edge expects a class 0 and a class 1 cluster");
  }
  Vertex u = join(c1.fixed_bits, c0.fixed_bits, 0, n_);
  return {u, u | 1U};
}

Vertex DualCube::cross_vertex(ClusterRef from, ClusterRef to) const {
  if (from.class_bit == to.class_bit) {
    throw InvalidArgument("cross_vertex needs clusters of different class");
  }
  return from.class_bit == 0 ? cross_edge(from, to).first : cross_edge(to, from).second;
}

Hypercube DualCube::cluster_graph(ClusterRef c) const {
  check_cluster(c);
  std::vector<Vertex> embedding;
  embedding.reserve(clusters_per_class());
  for (Vertex f = 0; f < clusters_per_class(); ++f) embedding.push_back(cluster_member(c, f));
  return Hypercube(n_ - 1, std::move(embedding));
}

const Graph& DualCube::graph() const {
  if (!graph_) {
    throw InvalidArgument("D_" + std::to_string(n_) + " is too large to materialize");
  }
  return *graph_;
}

std::string DualCube::str(ClusterRef c) const {
  return "(" + std::to_string(c.class_bit) + "," + to_bits(c.fixed_bits, n_ - 1) + ")";
}

Hypercube::Hypercube(int m) : m_(m), graph_(std::make_shared<const Graph>(build_hypercube_graph(m))) {}

Hypercube::Hypercube(int m, std::vector<Vertex> embedding) : Hypercube(m) {
  if (embedding.size() != vertex_count()) {
    throw InvalidArgument("hypercube embedding must cover every vertex");
  }
  embedding_ = std::move(embedding);
  for (std::size_t i = 0; i < embedding_.size(); ++i) {
    reverse_.emplace_back(embedding_[i], static_cast<Vertex>(i));
  }
  std::sort(reverse_.begin(), reverse_.end());
  for (std::size_t i = 1; i < reverse_.size(); ++i) {
    if (reverse_[i].first == reverse_[i - 1].first) throw InvalidArgument("hypercube embedding is not injective");
  }
}

Vertex Hypercube::to_host(Vertex local) const {
  if (local >= vertex_count()) throw InvalidArgument("not a hypercube vertex");
  return embedding_.empty() ? local : embedding_[local];
}

std::optional<Vertex> Hypercube::from_host(Vertex host) const {
  if (embedding_.empty()) {
    if (host < vertex_count()) return host;
    return std::nullopt;
  }
  auto it = std::lower_bound(reverse_.begin(), reverse_.end(), std::pair<Vertex, Vertex>{host, 0});
  if (it == reverse_.end() || it->first != host) return std::nullopt;
  return it->second;
}

}  // namespace dualcube
