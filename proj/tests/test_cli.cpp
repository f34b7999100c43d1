#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"

#include "dualcube/cli.hpp"

using dualcube::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("gen") {
    auto r = call({"gen", "--n", "3"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["vertices"].size() == 32);
    CHECK(j["edges"].size() == 48);
    auto dot = call({"gen", "--n", "2", "--format", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.find("graph") != std::string::npos);
  }

  TEST_CASE("trees") {
    std::vector<std::string> args{"trees", "--n", "4", "--terminals", "0000000,0000010,0110100,1011011"};
    auto r = call(args);
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["trees"].size() == 3);
    CHECK(j["terminals"].size() == 4);
    CHECK(r.err.find("verification: pass") != std::string::npos);
    CHECK(call(args).out == r.out);

    auto three = call({"trees", "--n", "5", "--terminals", "000000000,000000011,111100001", "--format", "text"});
    CHECK(three.code == 0);
    auto dot = call({"trees", "--n", "4", "--terminals", "0000000,0000010,0110100,1011011", "--format", "dot"});
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("graph", 0) == 0);
  }

  TEST_CASE("cut") {
    auto r = call({"cut", "--n", "4", "--r", "2"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["removed"].size() == 6);
    CHECK(j["census"] == nlohmann::json::array({120, 1, 1}));
    CHECK(r.err.find("verification: pass") != std::string::npos);
  }

  TEST_CASE("usage errors") {
    CHECK(call({"gen", "--n", "1"}).code == 2);
    CHECK(call({"gen", "--n", "10"}).code == 2);
    CHECK(call({"trees", "--n", "3", "--terminals", "00000,00001,00010,00100"}).code == 2);
    CHECK(call({"trees", "--n", "4", "--terminals", "0000000,0000000,0110100,1011011"}).code == 2);
    CHECK(call({"trees", "--n", "4", "--terminals", "0000000,0110100"}).code == 2);
    CHECK(call({"trees", "--n", "4", "--terminals", "000,0110100,1011011"}).code == 2);
    CHECK(call({"cut", "--n", "3", "--r", "3"}).code == 2);
    CHECK(call({"gen", "--n", "3", "--format", "xml"}).code == 2);
    CHECK(call({"verify", "--n", "3", "--suite", "bogus"}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({}).code == 2);
  }

  TEST_CASE("output file") {
    auto path = std::filesystem::temp_directory_path() / "dualcube_cli_test.json";
    std::filesystem::remove(path);
    auto r = call({"cut", "--n", "3", "--r", "1", "--output", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    std::ifstream in(path);
    auto j = nlohmann::json::parse(in);
    CHECK(j["r"] == 1);
    std::filesystem::remove(path);
  }

  TEST_CASE("verify") {
    auto r = call({"verify", "--n", "3", "--suite", "cuts"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["overall"] == true);
    CHECK(j["reports"][0]["checks"].size() == 4);

    setenv("DUALCUBE_JOBS", "2", 1);
    auto a = call({"verify", "--n", "4", "--suite", "trees", "--budget", "40"});
    unsetenv("DUALCUBE_JOBS");
    auto b = call({"verify", "--n", "4", "--suite", "trees", "--budget", "40", "--jobs", "1"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    setenv("DUALCUBE_JOBS", "many", 1);
    CHECK(call({"verify", "--n", "4", "--suite", "trees", "--budget", "4"}).code == 2);
    unsetenv("DUALCUBE_JOBS");
  }
}
