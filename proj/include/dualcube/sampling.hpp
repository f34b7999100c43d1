#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "dualcube/topology.hpp"

namespace dualcube {

// Draws terminal sets aimed at every branch of the tree constructions,
// including the degenerate positions (terminals next to cross edges, pivots
// leading into the far cluster, ...), mixed with uniform draws.
class TerminalSampler {
 public:
  TerminalSampler(const DualCube& d, std::uint64_t seed);

  static int generator_count();
  static std::string_view generator_name(int g);

  // Four distinct vertices from generator g (sorted).
  std::vector<Vertex> draw4(int g);
  // Three distinct vertices: a four-set generator minus one random member.
  std::vector<Vertex> draw3(int g);

 private:
  Vertex any_vertex();
  ClusterRef any_cluster(int class_bit);
  ClusterRef other_cluster(ClusterRef not_this, int class_bit);
  Vertex in_cluster(ClusterRef c);
  std::vector<Vertex> distinct_in(ClusterRef c, std::size_t count);
  std::size_t below(std::size_t bound);

  const DualCube& d_;
  std::mt19937_64 rng_;
};

// `count` distinct sets of the given size (3 or 4), cycling through the
// generators in order. Deterministic for a fixed seed.
std::vector<std::vector<Vertex>> stratified_sample(const DualCube& d, int size, int count, std::uint64_t seed);

}  // namespace dualcube
