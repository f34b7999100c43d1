#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "dualcube/topology.hpp"

namespace dualcube {

struct TrialOutcome {
  bool pass = false;
  std::string case_tag;
  std::string error;         // exception text or first failing check
  bool reservation_exhausted = false;
};

struct BatchSummary {
  std::size_t trials = 0;
  std::size_t passed = 0;
  std::size_t reservation_exhausted = 0;
  std::map<std::string, std::size_t> census;  // case tag -> count
  std::vector<std::string> failures;          // "<terminals>: <reason>", trial order
};

// Builds trees for one terminal set (3 or 4 vertices) and verifies them.
TrialOutcome run_tree_trial(const DualCube& d, const std::vector<Vertex>& terminals);

// Trials run on `jobs` OpenMP threads (<= 0: runtime default); the summary is
// reduced in trial order, so it does not depend on scheduling.
BatchSummary run_tree_batch(const DualCube& d, const std::vector<std::vector<Vertex>>& sets, int jobs = 0);
BatchSummary run_tree_batch_serial(const DualCube& d, const std::vector<std::vector<Vertex>>& sets);

}  // namespace dualcube
