#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "steinforge/cli.hpp"
#include "steinforge/error.hpp"
#include "steinforge/figures.hpp"
#include "steinforge/io.hpp"
#include "steinforge/suites.hpp"
#include "support.hpp"

using namespace testing;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string fixture(const std::string& name) { return std::string(STEINFORGE_FIXTURES) + "/" + name; }

std::string scratch(const std::string& name, const io::Json& j) {
  const auto path = std::filesystem::temp_directory_path() / ("steinforge-test-" + name);
  std::ofstream(path) << j.dump(2);
  return path.string();
}

std::string canon_map_output(const std::string& path) { return run({"group", "canon", path}).out; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("matching") {
    const Run k4 = run({"matching", "--s", "1", "--n", "4"});
    CHECK(k4.code == cli::kPass);
    CHECK(k4.out.find("reduced H_0 = Z^2") != std::string::npos);
    CHECK(k4.out.find("n/a") != std::string::npos);
    const Run k5 = run({"matching", "--s", "1", "--n", "5"});
    CHECK(k5.code == cli::kPass);
    CHECK(k5.out.find("pass") != std::string::npos);
    CHECK(run({"matching", "--s", "0", "--n", "2"}).code == cli::kUsage);
    CHECK(run({"matching", "--s", "2", "--n", "4", "--oriented", "--format", "json"}).code == cli::kPass);
  }

  TEST_CASE("verify") {
    const Run ve = run({"verify", "ve-iso", "--s", "2", "--n", "5"});
    CHECK(ve.code == cli::kPass);
    const Run core = run({"verify", "core", "--seed", "7", "--trials", "200", "--s", "2"});
    CHECK(core.code == cli::kPass);
    CHECK(core.out.find("203/203") != std::string::npos);
    CHECK(run({"verify", "nosuch"}).code == cli::kUsage);
    CHECK(run({"verify", "core"}).code == cli::kUsage);
    CHECK(run({"verify", "en-connectivity", "--s", "3", "--n", "7"}).code == cli::kUsage);
  }

  TEST_CASE("verify fails with exit code 1 and a witness") {
    const Run r = run({"verify", "no-two-bricks", "--s", "3", "--n", "5"});
    CHECK(r.code == cli::kPropertyFailed);
    CHECK(r.out.find("no-two-bricks-join-bound") != std::string::npos);
    CHECK(r.out.find("\"witness\"") != std::string::npos);
  }

  TEST_CASE("parallel suites print the same bytes") {
    for (const std::string suite : {"lattice-laws", "group-axioms", "cube", "matching"}) {
      CAPTURE(suite);
      const Run one = run({"verify", suite, "--seed", "3", "--trials", "30", "--jobs", "1", "--format", "json"});
      const Run two = run({"verify", suite, "--seed", "3", "--trials", "30", "--jobs", "3", "--format", "json"});
      CHECK(one.code == two.code);
      CHECK(one.out == two.out);
    }
  }

  TEST_CASE("group") {
    const std::string f1 = fixture("f1.json");
    const std::string f1inv = scratch("f1inv.json", io::to_json(inverse(figures::f1())));
    const std::string id = scratch("id.json", io::to_json(identity_map(2, 1)));
    const Run composed = run({"group", "compose", f1, f1inv});
    CHECK(composed.code == cli::kPass);
    const std::string product = scratch("product.json", io::parse(composed.out));
    CHECK(run({"group", "equal", product, id}).code == cli::kPass);
    CHECK(run({"group", "equal", f1, id}).code == cli::kPropertyFailed);

    const std::string swapped = scratch("f2-swapped.json", io::to_json(figures::f2_swapped()));
    CHECK(canon_map_output(fixture("f2.json")) == canon_map_output(swapped));

    const PVertex halves = split_vertex(canonicalize(identity_map(2, 1)), vertical_halves());
    const Run stab = run({"group", "stab", scratch("halves.json", io::to_json(halves.map()))});
    CHECK(stab.code == cli::kPass);
    CHECK(io::parse(stab.out)["order"] == 2);

    CHECK(run({"group", "frobnicate", f1}).code == cli::kUsage);
    CHECK(run({"group", "compose", f1}).code == cli::kUsage);
  }

  TEST_CASE("enumerate") {
    const Run elem = run({"enumerate", "elementary", "--s", "2"});
    CHECK(elem.code == cli::kPass);
    CHECK(elem.out.find("count: 8\n") != std::string::npos);
    CHECK(run({"enumerate", "ve", "--s", "2", "--n", "2"}).out.find("count: 4\n") != std::string::npos);
    CHECK(run({"enumerate", "en", "--s", "3", "--n", "7"}).code == cli::kUsage);
    const Run coarse = run({"enumerate", "coarsenings", fixture("fig2-right.json"), "--format", "json"});
    CHECK(coarse.code == cli::kPass);
    CHECK(io::parse(coarse.out)["count"] == enumerate_coarsenings(figures::core_right()).size());
  }

  TEST_CASE("every suite has a name and randomized suites demand a seed") {
    for (const auto& name : suite_names()) {
      SuiteConfig c;
      if (suite_is_randomized(name)) CHECK_THROWS_AS(run_suite(name, c), InvalidInput);
    }
    CHECK_THROWS_AS(run_suite("nosuch", SuiteConfig{}), InvalidInput);
  }
}
