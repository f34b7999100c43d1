#include "dualcube/harness.hpp"

#include <omp.h>

#include "dualcube/errors.hpp"
#include "dualcube/oracle.hpp"
#include "dualcube/streeforge.hpp"

namespace dualcube {

TrialOutcome run_tree_trial(const DualCube& d, const std::vector<Vertex>& terminals) {
  TrialOutcome out;
  try {
    TerminalSet s(d, terminals);
    TreeSet ts = s.size() == 4 ? strees4(d, s) : strees3(d, s);
    out.case_tag = ts.case_tag;
    auto report = oracle::verify_tree_set(d, ts);
    out.pass = report.overall();
    if (!out.pass) out.error = report.failure()->name + ": " + report.failure()->witness;
  } catch (const ReservationExhausted& e) {
    out.reservation_exhausted = true;
    out.error = e.what();
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

namespace {

BatchSummary reduce(const DualCube& d, const std::vector<std::vector<Vertex>>& sets,
                    const std::vector<TrialOutcome>& outcomes) {
  BatchSummary sum;
  sum.trials = outcomes.size();
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const auto& o = outcomes[i];
    if (o.pass) ++sum.passed;
    if (o.reservation_exhausted) ++sum.reservation_exhausted;
    if (!o.case_tag.empty()) ++sum.census[o.case_tag];
    if (!o.pass) {
      std::string name;
      for (Vertex v : sets[i]) name += (name.empty() ? "" : ",") + d.str(v);
      sum.failures.push_back(name + ": " + o.error);
    }
  }
  return sum;
}

}  // namespace

BatchSummary run_tree_batch(const DualCube& d, const std::vector<std::vector<Vertex>>& sets, int jobs) {
  std::vector<TrialOutcome> outcomes(sets.size());
  const auto count = static_cast<std::ptrdiff_t>(sets.size());
  const int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    outcomes[static_cast<std::size_t>(i)] = run_tree_trial(d, sets[static_cast<std::size_t>(i)]);
  }
  return reduce(d, sets, outcomes);
}

BatchSummary run_tree_batch_serial(const DualCube& d, const std::vector<std::vector<Vertex>>& sets) {
  std::vector<TrialOutcome> outcomes;
  outcomes.reserve(sets.size());
  for (const auto& s : sets) outcomes.push_back(run_tree_trial(d, s));
  return reduce(d, sets, outcomes);
}

}  // namespace dualcube
