#include <algorithm>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "dualcube/errors.hpp"
#include "dualcube/harness.hpp"
#include "dualcube/oracle.hpp"
#include "dualcube/sampling.hpp"
#include "dualcube/streeforge.hpp"

using namespace dualcube;
using test_support::L;

namespace {

TreeSet build_checked(const DualCube& d, std::vector<Vertex> s) {
  TerminalSet ts(d, std::move(s));
  TreeSet out = ts.size() == 4 ? strees4(d, ts) : strees3(d, ts);
  auto report = oracle::verify_tree_set(d, out);
  INFO(out.case_tag);
  if (const auto* bad = report.failure()) INFO(bad->name << ": " << bad->witness);
  CHECK(report.overall());
  CHECK(static_cast<int>(out.trees.size()) == d.order() - 1);
  return out;
}

Vertex member(const DualCube& d, int cls, Vertex fixed, Vertex free) {
  return d.cluster_member(ClusterRef{cls, fixed}, free);
}

}  // namespace

TEST_SUITE("streeforge") {
  TEST_CASE("profiles") {
    DualCube d(4);
    CHECK(TerminalSet(d, {member(d, 0, 0, 0), member(d, 0, 0, 1), member(d, 0, 0, 2), member(d, 0, 0, 3)}).profile() ==
          Profile::OneCluster);
    CHECK(TerminalSet(d, {member(d, 0, 0, 0), member(d, 0, 0, 1), member(d, 0, 0, 2), member(d, 0, 1, 3)}).profile() ==
          Profile::TwoSame31);
    CHECK(TerminalSet(d, {member(d, 0, 0, 0), member(d, 0, 0, 1), member(d, 1, 0, 2), member(d, 1, 0, 3)}).profile() ==
          Profile::TwoCross22);
    CHECK(TerminalSet(d, {member(d, 1, 0, 0), member(d, 1, 0, 1), member(d, 1, 2, 0), member(d, 0, 0, 0)}).profile() ==
          Profile::ThreeMixed);
    CHECK(TerminalSet(d, {member(d, 1, 0, 0), member(d, 0, 1, 1), member(d, 1, 2, 0), member(d, 0, 0, 0)}).profile() ==
          Profile::FourTwoTwo);
    CHECK_FALSE(TerminalSet(d, {1, 2, 3}).profile());
    CHECK_THROWS_AS(TerminalSet(d, {1, 1, 2, 3}), InvalidArgument);
    CHECK_THROWS_AS(TerminalSet(d, {1, 2}), InvalidArgument);
    CHECK_THROWS_AS(TerminalSet(d, {1, 2, 3, 200}), InvalidArgument);
  }

  TEST_CASE("order too small") {
    DualCube d(3);
    CHECK_THROWS_AS(strees4(d, TerminalSet(d, {0, 1, 2, 3})), UnsupportedOrder);
    CHECK_THROWS_AS(strees3(d, TerminalSet(d, {0, 1, 2})), UnsupportedOrder);
  }

  TEST_CASE("one cluster") {
    for (int n : {4, 5}) {
      DualCube d(n);
      std::vector<Vertex> s{member(d, 0, 3, 0), member(d, 0, 3, 1), member(d, 0, 3, 2), member(d, 0, 3, 7)};
      TreeSet ts = build_checked(d, s);
      CHECK(ts.case_tag == "one-cluster");
      ClusterRef home{0, 3};
      int inside = 0;
      for (const auto& t : ts.trees) {
        auto vs = tree_vertices(t);
        bool all_in = std::all_of(vs.begin(), vs.end(), [&](Vertex v) { return d.cluster_of(v) == home; });
        if (all_in) {
          ++inside;
        } else {
          for (Vertex v : vs) CHECK((d.cluster_of(v) != home || std::count(s.begin(), s.end(), v)));
        }
      }
      CHECK(inside == n - 2);
    }
  }

  TEST_CASE("two clusters") {
    DualCube d(4);
    SUBCASE("3+1 same class") {
      auto ts = build_checked(d, {member(d, 0, 0, 0), member(d, 0, 0, 3), member(d, 0, 0, 5), member(d, 0, 6, 2)});
      CHECK(ts.case_tag == "two:3+1-same");
    }
    SUBCASE("3+1 cross, fourth terminal is an outside neighbour") {
      Vertex x = member(d, 0, 0, 4);
      auto ts = build_checked(d, {x, member(d, 0, 0, 1), member(d, 0, 0, 2), d.outside_neighbor(x)});
      CHECK(ts.case_tag == "two:3+1-cross:free:bridge-is-w");
    }
    SUBCASE("2+2 cross class with x^1 = w") {
      Vertex x = member(d, 0, 2, 1);
      Vertex w = d.outside_neighbor(x);
      ClusterRef cw = d.cluster_of(w);
      build_checked(d, {x, member(d, 0, 2, 6), w, d.cluster_member(cw, d.free_bits(w) ^ 0b011)});
    }
    DualCube d5(5);
    SUBCASE("2+2 same class, shared outside clusters") {
      auto ts = build_checked(d5, {member(d5, 1, 1, 0), member(d5, 1, 1, 15), member(d5, 1, 9, 0), member(d5, 1, 9, 15)});
      CHECK(ts.case_tag == "two:2+2-same:shared");
    }
  }

  TEST_CASE("three clusters") {
    DualCube d(4);
    SUBCASE("all one class") {
      auto ts = build_checked(d, {member(d, 0, 0, 0), member(d, 0, 0, 7), member(d, 0, 1, 3), member(d, 0, 2, 3)});
      CHECK(ts.case_tag == "three:2+1+1-same");
    }
    SUBCASE("forced direct edge") {
      Vertex x = member(d, 0, 5, 2), y = member(d, 0, 5, 3);
      Vertex z = d.cluster_member(d.outside_cluster(x), 6);
      Vertex w = d.cluster_member(d.outside_cluster(y), 1);
      auto ts = build_checked(d, {x, y, z, w});
      CHECK(ts.case_tag.rfind("three:2+1+1-opposite:edge", 0) == 0);
      // Tree holding the edge xy stays inside the three terminal clusters.
      bool found = false;
      for (const auto& t : ts.trees) {
        if (std::count(t.begin(), t.end(), make_edge(x, y))) {
          found = true;
          for (Vertex v : tree_vertices(t)) {
            ClusterRef c = d.cluster_of(v);
            CHECK((c == d.cluster_of(x) || c == d.cluster_of(z) || c == d.cluster_of(w)));
          }
        }
      }
      CHECK(found);
    }
    SUBCASE("mixed classes, n = 5") {
      DualCube d5(5);
      auto ts = build_checked(d5, {member(d5, 0, 0, 0), member(d5, 0, 0, 9), member(d5, 0, 4, 3), member(d5, 1, 2, 3)});
      CHECK(ts.case_tag == "three:2+1+1-mixed");
    }
  }

  TEST_CASE("four clusters") {
    DualCube d(4);
    auto same = build_checked(d, {member(d, 0, 0, 0), member(d, 0, 1, 0), member(d, 0, 2, 0), member(d, 0, 3, 0)});
    CHECK(same.case_tag == "four:same");
    for (const auto& t : same.trees) {
      std::set<ClusterRef> connectors;
      for (Vertex v : tree_vertices(t)) {
        if (d.class_of(v) == 1) connectors.insert(d.cluster_of(v));
      }
      CHECK(connectors.size() == 1);
    }
    auto mixed = build_checked(d, {member(d, 0, 0, 0), member(d, 0, 1, 0), member(d, 0, 2, 0), member(d, 1, 3, 0)});
    CHECK(mixed.case_tag == "four:3+1");
    DualCube d5(5);
    auto split = build_checked(d5, {member(d5, 0, 0, 0), member(d5, 0, 1, 0), member(d5, 1, 2, 0), member(d5, 1, 3, 0)});
    CHECK(split.case_tag == "four:2+2");
  }

  TEST_CASE("three terminals") {
    DualCube d4(4), d5(5);
    build_checked(d4, {L("0000000"), L("0000001"), L("1111111")});
    build_checked(d5, {member(d5, 0, 0, 0), member(d5, 0, 1, 0), member(d5, 1, 2, 5)});
  }

  TEST_CASE("deterministic") {
    DualCube d(5);
    TerminalSet s(d, {3, 77, 300, 411});
    TreeSet a = strees4(d, s), b = strees4(d, s);
    CHECK(a.trees == b.trees);
    CHECK(a.case_tag == b.case_tag);
  }

  TEST_CASE("every case is reached on a D4 sample") {
    DualCube d(4);
    auto sets = stratified_sample(d, 4, 500, 1);
    BatchSummary s = run_tree_batch_serial(d, sets);
    CHECK(s.passed == s.trials);
    CHECK(s.reservation_exhausted == 0);
    const std::vector<std::string> expected = {
        "one-cluster",
        "two:3+1-same",
        "two:3+1-cross:free:bridge",
        "two:3+1-cross:free:bridge-is-w",
        "two:3+1-cross:free:clear-w",
        "two:3+1-cross:free:clear-nbr",
        "two:3+1-cross:pivot-hit",
        "two:3+1-cross:pivot-hit-is-w",
        "two:2+2-same:separate",
        "two:2+2-same:shared",
        "two:2+2-cross",
        "three:2+1+1-same",
        "three:2+1+1-mixed",
        "three:2+1+1-opposite:pivots",
        "three:2+1+1-opposite:edge:separate",
        "three:2+1+1-opposite:edge:shared",
        "four:same",
        "four:3+1",
        "four:2+2",
    };
    for (const auto& tag : expected) {
      INFO(tag);
      CHECK(s.census.count(tag) == 1);
    }
    CHECK(s.census.size() == expected.size());
  }

  TEST_CASE("larger orders") {
    for (int n : {6, 7}) {
      DualCube d(n);
      for (const auto& set : stratified_sample(d, 4, 60, 5)) build_checked(d, set);
      for (const auto& set : stratified_sample(d, 3, 30, 5)) build_checked(d, set);
    }
  }
}

TEST_SUITE("reservation") {
  TEST_CASE("claims skip taken clusters") {
    DualCube d(4);
    ClusterReservation r(d);
    r.share(ClusterRef{1, 0});
    r.reserve(ClusterRef{1, 1}, 0);
    r.reserve(ClusterRef{1, 1}, 0);
    CHECK(r.claim_next(1, 2) == ClusterRef{1, 2});
    CHECK(r.owner(ClusterRef{1, 2}) == 2);
    CHECK(r.owner(ClusterRef{1, 0}) == ClusterReservation::kShared);
    CHECK_THROWS_AS(r.reserve(ClusterRef{1, 1}, 3), std::logic_error);
    auto avail = r.available_to(2);
    CHECK(std::count(avail.begin(), avail.end(), ClusterRef{1, 2}) == 1);
    CHECK(std::count(avail.begin(), avail.end(), ClusterRef{1, 1}) == 0);
    CHECK(avail.size() == 8 + 5 + 1);
    for (int i = 0; i < 5; ++i) r.claim_next(1, 4);
    CHECK_THROWS_AS(r.claim_next(1, 4), ReservationExhausted);
  }
}

TEST_SUITE("hypersearch") {
  TEST_CASE("Q3 every four-set") {
    Hypercube q(3);
    int sets = 0;
    for (Vertex a = 0; a < 8; ++a) {
      for (Vertex b = a + 1; b < 8; ++b) {
        for (Vertex c = b + 1; c < 8; ++c) {
          for (Vertex e = c + 1; e < 8; ++e) {
            std::vector<Vertex> s{a, b, c, e};
            TreeSet ts = hypercube_strees4(q, s);
            CHECK(oracle::verify_tree_set(q.graph(), ts, 2).overall());
            ++sets;
          }
        }
      }
    }
    CHECK(sets == 70);
  }

  TEST_CASE("Q3 star terminals") {
    Hypercube q(3);
    std::vector<Vertex> s{L("000"), L("001"), L("010"), L("100")};
    TreeSet ts = hypercube_strees4(q, s);
    CHECK(ts.trees.size() == 2);
    auto best = oracle::max_stree_packing(q.graph(), s);
    CHECK(best.exact);
    CHECK(best.count == 2);
  }

  TEST_CASE("Q4 every four-set, Q5 sample") {
    Hypercube q4(4);
    for (Vertex a = 0; a < 16; ++a) {
      for (Vertex b = a + 1; b < 16; ++b) {
        for (Vertex c = b + 1; c < 16; ++c) {
          for (Vertex e = c + 1; e < 16; ++e) {
            std::vector<Vertex> s{a, b, c, e};
            REQUIRE(oracle::verify_tree_set(q4.graph(), hypercube_strees4(q4, s), 3).overall());
          }
        }
      }
    }
    Hypercube q5(5);
    for (Vertex a = 0; a < 32; a += 3) {
      std::vector<Vertex> s{a, (a * 7 + 1) % 32, (a * 11 + 5) % 32, (a + 16) % 32};
      std::sort(s.begin(), s.end());
      if (std::adjacent_find(s.begin(), s.end()) != s.end()) continue;
      CHECK(oracle::verify_tree_set(q5.graph(), hypercube_strees4(q5, s), 4).overall());
    }
  }

  TEST_CASE("preconditions") {
    std::vector<Vertex> s{0, 1, 2, 3};
    CHECK_THROWS_AS(hypercube_strees4(Hypercube(2), s), InvalidArgument);
    std::vector<Vertex> dup{0, 0, 2, 3};
    CHECK_THROWS_AS(hypercube_strees4(Hypercube(3), dup), InvalidArgument);
  }
}
