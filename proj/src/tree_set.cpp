#include "dualcube/tree_set.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <sstream>

#include "dualcube/errors.hpp"
#include "dualcube/serialize.hpp"

namespace dualcube {

std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::OneCluster: return "one-cluster";
    case Profile::TwoSame31: return "two:3+1-same";
    case Profile::TwoCross31: return "two:3+1-cross";
    case Profile::TwoSame22: return "two:2+2-same";
    case Profile::TwoCross22: return "two:2+2-cross";
    case Profile::ThreeSame: return "three:2+1+1-same";
    case Profile::ThreeMixed: return "three:2+1+1-mixed";
    case Profile::ThreeOpposite: return "three:2+1+1-opposite";
    case Profile::FourSame: return "four:same";
    case Profile::FourThreeOne: return "four:3+1";
    case Profile::FourTwoTwo: return "four:2+2";
  }
  return "unknown";
}

Profile classify(const DualCube& d, std::span<const Vertex> four) {
  std::map<ClusterRef, int> count;
  for (Vertex v : four) ++count[d.cluster_of(v)];
  std::vector<std::pair<int, ClusterRef>> groups;
  for (auto& [c, k] : count) groups.emplace_back(k, c);
  std::sort(groups.begin(), groups.end(), [](auto& a, auto& b) { return a.first > b.first; });

  switch (groups.size()) {
    case 1:
      return Profile::OneCluster;
    case 2: {
      bool same = groups[0].second.class_bit == groups[1].second.class_bit;
      if (groups[0].first == 3) return same ? Profile::TwoSame31 : Profile::TwoCross31;
      return same ? Profile::TwoSame22 : Profile::TwoCross22;
    }
    case 3: {
      int base = groups[0].second.class_bit;
      int opposite = (groups[1].second.class_bit != base) + (groups[2].second.class_bit != base);
      return opposite == 0 ? Profile::ThreeSame : opposite == 1 ? Profile::ThreeMixed : Profile::ThreeOpposite;
    }
    default: {
      int ones = 0;
      for (auto& g : groups) ones += g.second.class_bit;
      if (ones == 0 || ones == 4) return Profile::FourSame;
      if (ones == 2) return Profile::FourTwoTwo;
      return Profile::FourThreeOne;
    }
  }
}

TerminalSet::TerminalSet(const DualCube& d, std::vector<Vertex> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() != 3 && vertices_.size() != 4) {
    throw InvalidArgument("terminal set must have 3 or 4 vertices");
  }
  for (Vertex v : vertices_) {
    if (!d.is_vertex(v)) throw InvalidArgument("terminal is not a vertex of D_" + std::to_string(d.order()));
  }
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw InvalidArgument("terminals must be distinct");
  }
  std::vector<ClusterRef> clusters;
  for (Vertex v : vertices_) clusters.push_back(d.cluster_of(v));
  std::sort(clusters.begin(), clusters.end());
  cluster_count_ = static_cast<int>(std::unique(clusters.begin(), clusters.end()) - clusters.begin());
  if (vertices_.size() == 4) profile_ = classify(d, vertices_);
}

bool TerminalSet::contains(Vertex v) const { return std::binary_search(vertices_.begin(), vertices_.end(), v); }

std::vector<Vertex> tree_vertices(const Tree& t) {
  std::vector<Vertex> out;
  for (const auto& [a, b] : t) {
    out.push_back(a);
    out.push_back(b);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

nlohmann::json to_json(const TreeSet& ts, int n) {
  nlohmann::json trees = nlohmann::json::array();
  for (const auto& t : ts.trees) trees.push_back(edges_to_json(t, ts.width));
  return {{"n", n}, {"terminals", vertices_to_json(ts.terminals, ts.width)}, {"trees", trees}};
}

std::string to_dot(const TreeSet& ts) {
  static constexpr std::array<const char*, 10> kColours = {
      "red", "blue", "darkgreen", "orange", "purple", "brown", "magenta", "cyan", "gold", "gray40"};
  std::ostringstream out;
  out << "graph trees {\n";
  for (Vertex v : ts.terminals) out << "  \"" << to_bits(v, ts.width) << "\" [shape=box];\n";
  for (std::size_t i = 0; i < ts.trees.size(); ++i) {
    const char* colour = kColours[i % kColours.size()];
    for (const auto& [a, b] : ts.trees[i]) {
      out << "  \"" << to_bits(a, ts.width) << "\" -- \"" << to_bits(b, ts.width) << "\" [color=" << colour
          << ", label=\"T" << i + 1 << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string to_text(const TreeSet& ts) {
  std::ostringstream out;
  out << "terminals:";
  for (Vertex v : ts.terminals) out << ' ' << to_bits(v, ts.width);
  out << "\ncase: " << ts.case_tag << "\ntrees: " << ts.trees.size() << '\n';
  for (std::size_t i = 0; i < ts.trees.size(); ++i) {
    out << "T" << i + 1 << " (" << ts.trees[i].size() << " edges):";
    for (const auto& [a, b] : ts.trees[i]) out << ' ' << to_bits(a, ts.width) << '-' << to_bits(b, ts.width);
    out << '\n';
  }
  return out.str();
}

}  // namespace dualcube
