#include <fstream>
#include <sstream>

#include "doctest.h"
#include "steinforge/error.hpp"
#include "steinforge/figures.hpp"
#include "steinforge/io.hpp"
#include "support.hpp"

using namespace testing;

namespace {

std::string fixture(const std::string& name) { return std::string(STEINFORGE_FIXTURES) + "/" + name; }

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("fixtures hold the same data as the built-in examples") {
    CHECK(equals(io::read_map(fixture("f1.json")), figures::f1()));
    CHECK(equals(io::read_map(fixture("f2.json")), figures::f2()));
    CHECK(io::read_covering(fixture("fig2-left.json")) == figures::core_left());
    CHECK(io::read_covering(fixture("fig2-middle.json")) == figures::core_middle());
    CHECK(io::read_covering(fixture("fig2-right.json")) == figures::core_right());
    CHECK(io::read_merging(fixture("fig3.json")) == figures::ve_example());
    CHECK(io::read_merging(fixture("fig4.json")) == figures::two_brick_example().u);
  }

  TEST_CASE("round trips") {
    const Covering c = figures::core_left();
    CHECK(io::covering_from_json(io::to_json(c)) == c);
    const DyadicMap f = figures::f2();
    CHECK(equals(io::map_from_json(io::to_json(f)), f));
    const Merging u = figures::ve_example();
    CHECK(io::merging_from_json(io::to_json(u)) == u);
    CHECK(io::interval_from_json(io::to_json(kQ2)) == kQ2);
  }

  TEST_CASE("merging records follow the interchange layout") {
    const io::Json j = io::to_json(figures::ve_example());
    CHECK(j["n"] == 5);
    CHECK(j["s"] == 2);
    REQUIRE(j["parts"].size() == 3);
    CHECK(j["parts"][0]["labels"] == io::Json::array({1, 3}));
    CHECK(j["parts"][0].contains("covering"));
  }

  TEST_CASE("malformed input is rejected") {
    CHECK_THROWS_AS(io::parse("{"), InvalidInput);
    CHECK_THROWS_AS(io::covering_from_json(io::parse(R"({"s": 2})")), InvalidInput);
    CHECK_THROWS_AS(io::interval_from_json(io::parse(R"({"l": 1, "k": 2})")), InvalidInput);
    CHECK_THROWS_AS(io::covering_from_json(io::parse(R"({"s": 1, "m": 1, "bricks": [{"block": 1, "edges": [{"l": 1, "k": 0}]}]})")),
                    InvalidInput);
    CHECK_THROWS_AS(io::read_map(fixture("does-not-exist.json")), InvalidInput);
  }

  TEST_CASE("homology reports serialize torsion") {
    SimplicialComplex rp2;
    for (Simplex f : std::vector<Simplex>{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                           {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}})
      rp2.add(f);
    const io::Json j = io::to_json(homology(rp2));
    CHECK(j.dump().find("\"torsion\":[2]") != std::string::npos);
  }
}
