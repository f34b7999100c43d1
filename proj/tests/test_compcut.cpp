#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "support.hpp"

#include "dualcube/compcut.hpp"
#include "dualcube/errors.hpp"
#include "dualcube/oracle.hpp"

using namespace dualcube;
using test_support::L;

TEST_SUITE("compcut") {
  TEST_CASE("formula") {
    CHECK(cut_size_formula(2, 1) == 2);
    CHECK(cut_size_formula(3, 1) == 3);
    CHECK(cut_size_formula(3, 2) == 4);
    CHECK(cut_size_formula(4, 3) == 7);
    CHECK(cut_size_formula(5, 2) == 8);
    CHECK(cut_size_formula(10, 9) == 46);
    CHECK_THROWS_AS(cut_size_formula(1, 1), InvalidArgument);
    CHECK_THROWS_AS(cut_size_formula(4, 0), InvalidArgument);
    CHECK_THROWS_AS(cut_size_formula(4, 4), InvalidArgument);
  }

  TEST_CASE("formula grows with r") {
    for (int n = 3; n <= 12; ++n) {
      for (int r = 1; r + 1 <= n - 1; ++r) CHECK(cut_size_formula(n, r + 1) > cut_size_formula(n, r));
    }
  }

  TEST_CASE("constructed cut has the formula size and isolates r vertices") {
    for (int n = 2; n <= 6; ++n) {
      DualCube d(n);
      for (int r = 1; r <= n - 1; ++r) {
        CAPTURE(n);
        CAPTURE(r);
        CutSet cut = component_cut(d, r);
        CHECK(static_cast<int>(cut.removed.size()) == cut_size_formula(n, r));
        CHECK(std::is_sorted(cut.removed.begin(), cut.removed.end()));
        CHECK(cut.census.size() >= static_cast<std::size_t>(r + 1));
        CHECK(std::count(cut.census.begin(), cut.census.end(), 1U) >= r);
        CHECK(verify_cut(d, cut));
        // the isolated vertices are exactly u_1..u_r
        std::set<Vertex> removed(cut.removed.begin(), cut.removed.end());
        for (int i = 1; i <= r; ++i) {
          Vertex ui = Label(0, d.width()).flipped(i).bits();
          CHECK(removed.count(ui) == 0);
          for (Vertex w : d.neighbors(ui)) CHECK(removed.count(w) == 1);
        }
      }
    }
  }

  TEST_CASE("census agrees with the oracle") {
    for (int n = 2; n <= 5; ++n) {
      DualCube d(n);
      for (int r = 1; r <= n - 1; ++r) {
        CutSet cut = component_cut(d, r);
        CHECK(verify_cut(d, cut.removed) == oracle::component_census(d.graph(), cut.removed));
      }
    }
  }

  TEST_CASE("tampered cuts are rejected") {
    DualCube d(4);
    CutSet cut = component_cut(d, 2);
    CutSet short_cut = cut;
    short_cut.removed.pop_back();
    CHECK_FALSE(verify_cut(d, short_cut));
    CutSet wrong_census = cut;
    wrong_census.census.back() += 1;
    CHECK_FALSE(verify_cut(d, wrong_census));
  }

  TEST_CASE("no smaller cut in D2 and D3") {
    for (int n : {2, 3}) {
      DualCube d(n);
      for (int r = 1; r <= n - 1; ++r) {
        int size = cut_size_formula(n, r);
        CHECK(oracle::exhaustive_cut_search(d.graph(), size, r));
        CHECK_FALSE(oracle::exhaustive_cut_search(d.graph(), size - 1, r));
      }
    }
  }

  TEST_CASE("common neighbours in hypercubes") {
    for (int m : {3, 4}) {
      Hypercube q(m);
      for (Vertex u = 0; u < q.vertex_count(); ++u) {
        for (Vertex v = u + 1; v < q.vertex_count(); ++v) {
          auto c = common_neighbors(q, u, v);
          int dist = std::popcount(u ^ v);
          std::size_t expected = dist == 2 ? 2 : 0;
          CHECK(c.size() == expected);
        }
      }
    }
    CHECK_THROWS_AS(common_neighbors(Hypercube(3), 2, 2), InvalidArgument);
    CHECK_THROWS_AS(common_neighbors(Hypercube(3), 2, 9), InvalidArgument);
  }

  TEST_CASE("structure after small deletions") {
    DualCube d(4);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<Vertex> pick(0, static_cast<Vertex>(d.vertex_count() - 1));
    for (int k = 1; k <= 3; ++k) {
      int limit = k * 4 - k * (k + 1) / 2;
      for (int trial = 0; trial < 50; ++trial) {
        std::set<Vertex> t;
        // neighbourhoods of a few vertices, then random fill
        for (int i = 1; i < k; ++i) {
          Vertex c = pick(rng);
          for (Vertex w : d.neighbors(c)) {
            if (static_cast<int>(t.size()) < limit) t.insert(w);
          }
        }
        while (static_cast<int>(t.size()) < limit) t.insert(pick(rng));
        std::vector<Vertex> tv(t.begin(), t.end());
        auto rep = structure_check(d, tv, k);
        CHECK(rep.holds);
        CHECK(rep.small_total <= static_cast<std::size_t>(k - 1));
      }
    }
    std::vector<Vertex> too_many{0, 1, 2, 3};
    CHECK_THROWS_AS(structure_check(d, too_many, 1), InvalidArgument);
    CHECK_THROWS_AS(structure_check(d, too_many, 4), InvalidArgument);
  }

  TEST_CASE("json") {
    DualCube d(3);
    auto j = to_json(component_cut(d, 1), d);
    CHECK(j["n"] == 3);
    CHECK(j["r"] == 1);
    CHECK(j["removed"].size() == 3);
    CHECK(j["removed"][0].get<std::string>().size() == 5);
    CHECK(j["census"] == nlohmann::json::array({28, 1}));
  }
}
