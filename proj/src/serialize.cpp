#include "dualcube/serialize.hpp"

#include <sstream>

namespace dualcube {

nlohmann::json vertices_to_json(const std::vector<Vertex>& vertices, int width) {
  nlohmann::json out = nlohmann::json::array();
  for (Vertex v : vertices) out.push_back(to_bits(v, width));
  return out;
}

nlohmann::json edges_to_json(const std::vector<Edge>& edges, int width) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [a, b] : edges) out.push_back({to_bits(a, width), to_bits(b, width)});
  return out;
}

nlohmann::json graph_to_json(const DualCube& d) {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  vertices.reserve(d.vertex_count());
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    vertices.push_back(v);
    for (Vertex u : d.neighbors(v)) {
      if (v < u) edges.emplace_back(v, u);
    }
  }
  return {{"n", d.order()},
          {"vertices", vertices_to_json(vertices, d.width())},
          {"edges", edges_to_json(edges, d.width())}};
}

std::string graph_to_dot(const DualCube& d) {
  std::ostringstream out;
  out << "graph D" << d.order() << " {\n";
  for (Vertex v = 0; v < d.vertex_count(); ++v) out << "  \"" << d.str(v) << "\";\n";
  for (Vertex v = 0; v < d.vertex_count(); ++v) {
    for (Vertex u : d.neighbors(v)) {
      if (v < u) out << "  \"" << d.str(v) << "\" -- \"" << d.str(u) << "\";\n";
    }
  }
  out << "}\n";
  return out.str();
}

std::string dump(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace dualcube
