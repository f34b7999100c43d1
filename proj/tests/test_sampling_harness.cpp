#include <algorithm>
#include <set>

#include "doctest.h"

#include "dualcube/harness.hpp"
#include "dualcube/sampling.hpp"

using namespace dualcube;

TEST_SUITE("sampling") {
  TEST_CASE("generators draw valid distinct sets") {
    DualCube d(5);
    TerminalSampler sampler(d, 9);
    for (int g = 0; g < TerminalSampler::generator_count(); ++g) {
      CAPTURE(TerminalSampler::generator_name(g));
      for (int i = 0; i < 20; ++i) {
        auto s4 = sampler.draw4(g);
        REQUIRE(s4.size() == 4);
        CHECK(std::is_sorted(s4.begin(), s4.end()));
        CHECK(std::adjacent_find(s4.begin(), s4.end()) == s4.end());
        for (Vertex v : s4) CHECK(d.is_vertex(v));
        auto s3 = sampler.draw3(g);
        CHECK(s3.size() == 3);
        CHECK(std::set<Vertex>(s3.begin(), s3.end()).size() == 3);
      }
    }
  }

  TEST_CASE("stratified sample is deterministic and distinct") {
    DualCube d(4);
    auto a = stratified_sample(d, 4, 200, 3);
    auto b = stratified_sample(d, 4, 200, 3);
    CHECK(a == b);
    CHECK(a.size() == 200);
    CHECK(std::set<std::vector<Vertex>>(a.begin(), a.end()).size() == 200);
    CHECK(stratified_sample(d, 4, 200, 4) != a);
    auto c = stratified_sample(d, 3, 50, 3);
    CHECK(c.size() == 50);
    for (const auto& s : c) CHECK(s.size() == 3);
  }
}

TEST_SUITE("harness") {
  TEST_CASE("serial and parallel batches agree") {
    DualCube d(5);
    auto sets = stratified_sample(d, 4, 120, 11);
    auto extra = stratified_sample(d, 3, 60, 11);
    sets.insert(sets.end(), extra.begin(), extra.end());
    BatchSummary p = run_tree_batch(d, sets, 4);
    BatchSummary s = run_tree_batch_serial(d, sets);
    CHECK(p.trials == 180);
    CHECK(p.passed == p.trials);
    CHECK(p.reservation_exhausted == 0);
    CHECK(p.census == s.census);
    CHECK(p.failures == s.failures);
  }

  TEST_CASE("bad trials are reported, not thrown") {
    DualCube d(4);
    TrialOutcome dup = run_tree_trial(d, {1, 1, 2, 3});
    CHECK_FALSE(dup.pass);
    CHECK_FALSE(dup.error.empty());
    BatchSummary s = run_tree_batch_serial(d, {{1, 1, 2, 3}, {0, 5, 9, 100}});
    CHECK(s.trials == 2);
    CHECK(s.passed == 1);
    CHECK(s.failures.size() == 1);

    DualCube d3(3);
    TrialOutcome small = run_tree_trial(d3, {0, 1, 2, 3});
    CHECK_FALSE(small.pass);
  }
}
