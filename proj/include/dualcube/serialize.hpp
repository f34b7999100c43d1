#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "dualcube/graph.hpp"
#include "dualcube/topology.hpp"

namespace dualcube {

// {"n": int, "vertices": [bitstring], "edges": [[bitstring, bitstring]]}, both
// lists in lexicographic bit-string order.
nlohmann::json graph_to_json(const DualCube& d);
std::string graph_to_dot(const DualCube& d);

nlohmann::json vertices_to_json(const std::vector<Vertex>& vertices, int width);
nlohmann::json edges_to_json(const std::vector<Edge>& edges, int width);

// Stable text rendering used by every CLI output (two-space indent, trailing newline).
std::string dump(const nlohmann::json& doc);

}  // namespace dualcube
