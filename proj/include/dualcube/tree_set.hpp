#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "dualcube/graph.hpp"
#include "dualcube/topology.hpp"

namespace dualcube {

// How four terminals sit in the cluster decomposition, up to symmetry.
// "same"/"cross" compare the classes of the occupied clusters; for three
// clusters the reference class is that of the cluster holding two terminals.
enum class Profile {
  OneCluster,
  TwoSame31,       // 3 + 1, both clusters of one class
  TwoCross31,      // 3 + 1, clusters of different class
  TwoSame22,
  TwoCross22,
  ThreeSame,       // 2 + 1 + 1, all clusters one class
  ThreeMixed,      // singles: one same class, one opposite
  ThreeOpposite,   // both singles in the opposite class
  FourSame,        // 1+1+1+1, one class
  FourThreeOne,    // three clusters of one class, one of the other
  FourTwoTwo,
};

std::string_view to_string(Profile p);
inline constexpr int kProfileCount = 11;

// Three or four distinct vertices of a dual cube, kept sorted.
class TerminalSet {
 public:
  TerminalSet(const DualCube& d, std::vector<Vertex> vertices);

  std::span<const Vertex> vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  bool contains(Vertex v) const;
  int cluster_count() const { return cluster_count_; }
  // Defined for four-terminal sets only.
  std::optional<Profile> profile() const { return profile_; }

 private:
  std::vector<Vertex> vertices_;
  int cluster_count_ = 0;
  std::optional<Profile> profile_;
};

Profile classify(const DualCube& d, std::span<const Vertex> four);

using Tree = std::vector<Edge>;  // sorted, each edge (smaller, larger)

struct TreeSet {
  int width = 1;
  std::vector<Vertex> terminals;  // sorted
  std::vector<Tree> trees;
  // Which construction branch produced the set (e.g. "two:3+1-cross:bridge").
  std::string case_tag;
};

std::vector<Vertex> tree_vertices(const Tree& t);

// {"n": int, "terminals": [bitstring], "trees": [[[bitstring, bitstring], ...], ...]}
nlohmann::json to_json(const TreeSet& ts, int n);
// One colour per tree; terminals drawn as boxes.
std::string to_dot(const TreeSet& ts);
std::string to_text(const TreeSet& ts);

}  // namespace dualcube
