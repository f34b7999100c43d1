#pragma once

#include <set>
#include <vector>

#include "dualcube/label.hpp"
#include "dualcube/menger.hpp"

namespace test_support {

inline dualcube::Vertex L(const char* bits) { return dualcube::Label::parse(bits).bits(); }

// Vertices shared by two paths.
inline std::set<dualcube::Vertex> common(const dualcube::Path& a, const dualcube::Path& b) {
  std::set<dualcube::Vertex> sa(a.begin(), a.end()), out;
  for (auto v : b) {
    if (sa.count(v)) out.insert(v);
  }
  return out;
}

}  // namespace test_support
