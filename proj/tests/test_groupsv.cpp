#include <random>

#include "doctest.h"
#include "steinforge/error.hpp"
#include "steinforge/figures.hpp"
#include "steinforge/random.hpp"
#include "support.hpp"

using namespace testing;

namespace {

// The half swap of I^2: left half onto right half and back.
DyadicMap half_swap() {
  return DyadicMap(2, 1, 1, {{sq(kLo, kAll), sq(kHi, kAll)}, {sq(kHi, kAll), sq(kLo, kAll)}});
}

PVertex level_one() { return canonicalize(identity_map(2, 1)); }

}  // namespace

TEST_SUITE("groupsv") {
  TEST_CASE("evaluate: identity") {
    const Point p{1, {Rational(1, 3), Rational(5, 7)}};
    CHECK(evaluate(identity_map(2, 1), p) == p);
  }

  TEST_CASE("evaluate: f1 at (1/3, 1/3)") {
    // The point lies in [0,1) x [0,1/2), carried onto [3/4,1) x [0,1) by
    // x -> 3/4 + x/4 and y -> 2y.
    const Point image = evaluate(figures::f1(), Point{1, {Rational(1, 3), Rational(1, 3)}});
    CHECK(image == Point{1, {Rational(5, 6), Rational(2, 3)}});
  }

  TEST_CASE("compose and inverse agree with pointwise evaluation") {
    std::mt19937_64 rng(21);
    const DyadicMap f = figures::f1();
    const DyadicMap ff = compose(f, f);
    const DyadicMap inv = inverse(f);
    for (int i = 0; i < 1000; ++i) {
      const Point p = point_in(rng, 2, 1);
      CHECK(evaluate(ff, p) == evaluate(f, evaluate(f, p)));
      CHECK(evaluate(inv, evaluate(f, p)) == p);
      CHECK(evaluate(compose(f, inv), p) == p);
    }
  }

  TEST_CASE("equals ignores the presentation") {
    const DyadicMap f = figures::f1();
    CHECK(equals(f, refine_domain(f, join(strip_labels(f.domain()), maximal_elementary(2, 1)))));
    CHECK(equals(identity_map(2, 1), refine_domain(identity_map(2, 1), maximal_elementary(2, 1))));
    const DyadicMap g = compose(f, half_swap());
    CHECK_FALSE(equals(f, g));
    const Point witness{1, {Rational(1, 8), Rational(1, 8)}};
    CHECK(evaluate(f, witness) != evaluate(g, witness));
  }

  TEST_CASE("classify_arrow") {
    const DyadicMap split = splitting_along(vertical_halves());
    const ArrowClass a = classify_arrow(split);
    CHECK(a.splitting);
    CHECK(a.nontrivial);
    CHECK(a.elementary);
    CHECK(a.very_elementary);
    const ArrowClass b = classify_arrow(inverse(split));
    CHECK(b.merging);
    CHECK_FALSE(b.splitting);
  }

  TEST_CASE("the splitting from f1 to f2 is along two horizontal halves") {
    const DyadicMap z = compose(figures::f2(), inverse(figures::f1()));
    const ArrowClass a = classify_arrow(z);
    CHECK(a.splitting);
    CHECK(a.elementary);
    CHECK(a.very_elementary);
    REQUIRE(a.along.has_value());
    CHECK(strip_labels(*a.along) == horizontal_halves());
  }

  TEST_CASE("canonicalize forgets the order of codomain blocks") {
    const PVertex a = canonicalize(figures::f2());
    const PVertex b = canonicalize(figures::f2_swapped());
    CHECK(same_vertex(a, b));
    CHECK(a.t() == 2);
    CHECK(equals(a.map(), b.map()));
  }

  TEST_CASE("pv_le") {
    const PVertex x1 = canonicalize(figures::f1());
    const PVertex x2 = canonicalize(figures::f2());
    const auto self = pv_le(x1, x1);
    REQUIRE(self.has_value());
    CHECK(self->along.size() == 1);
    CHECK_FALSE(pv_lt(x1, x1));
    CHECK(pv_lt(x1, x2));
    CHECK_FALSE(pv_le(x2, x1).has_value());
    CHECK(pv_elem_le(x1, x2));
    CHECK(pv_velem_le(x1, x2));
    CHECK_FALSE(pv_le(level_one(), x1).has_value());
    CHECK_FALSE(pv_le(x1, level_one()).has_value());
  }

  TEST_CASE("one half split is very elementary") {
    const PVertex x = level_one();
    const PVertex y = split_vertex(x, vertical_halves());
    CHECK(pv_velem_le(x, y));
    const PVertex q = split_vertex(x, quarters());
    CHECK(pv_elem_le(x, q));
    CHECK_FALSE(pv_velem_le(x, q));
    const PVertex l = split_vertex(x, figures::core_left());
    CHECK(pv_lt(x, l));
    CHECK_FALSE(pv_elem_le(x, l));
  }

  TEST_CASE("elementary cores") {
    const PVertex x = level_one();
    CHECK(same_vertex(elementary_core(x, split_vertex(x, figures::core_left())), split_vertex(x, quarters())));
    CHECK(same_vertex(elementary_core(x, split_vertex(x, figures::core_middle())),
                      split_vertex(x, figures::core_middle_expected())));
    CHECK(same_vertex(elementary_core(x, split_vertex(x, figures::core_right())),
                      split_vertex(x, horizontal_halves())));
    const PVertex y = split_vertex(x, quarters());
    CHECK(same_vertex(elementary_core(x, y), y));
  }

  TEST_CASE("in three dimensions a strict splitting can have a trivial elementary core") {
    const PVertex x = canonicalize(identity_map(3, 1));
    const PVertex y = split_vertex(x, figures::no_midcut_3d());
    CHECK(pv_lt(x, y));
    CHECK(same_vertex(elementary_core(x, y), x));
  }

  TEST_CASE("stabilizers") {
    const PVertex x = split_vertex(level_one(), vertical_halves());
    const auto stab = stabilizer(x);
    REQUIRE(stab.size() == 2);
    for (const auto& g : stab) {
      CHECK(same_vertex(act(x, g), x));
      CHECK(equals(compose(g, g), identity_map(2, 1)));
    }
    CHECK((equals(stab[0], half_swap()) || equals(stab[1], half_swap())));
    const auto one = stabilizer(level_one());
    REQUIRE(one.size() == 1);
    CHECK(equals(one.front(), identity_map(2, 1)));
  }

  TEST_CASE("transporter") {
    const PVertex x = level_one();
    CHECK(equals(transporter(x, x), identity_map(2, 1)));
    const PVertex y = canonicalize(figures::f1());
    const DyadicMap g = transporter(x, y);
    CHECK(same_vertex(act(x, g), y));
  }

  TEST_CASE("directedness") {
    const PVertex x = level_one();
    CHECK(same_vertex(directedness_check(x, x), x));
    const PVertex y = canonicalize(figures::f1());
    const PVertex z = directedness_check(x, y);
    CHECK(pv_le(x, z).has_value());
    CHECK(pv_le(y, z).has_value());
  }

  TEST_CASE("property: group axioms on random maps") {
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
      auto rng = gen::trial_rng(31, trial);
      const int s = static_cast<int>(trial % 3) + 1;
      const DyadicMap f = gen::random_map(rng, s, 1, 1, 5);
      const DyadicMap g = gen::random_map(rng, s, 1, 1, 4);
      const DyadicMap h = gen::random_map(rng, s, 1, 1, 3);
      const DyadicMap id = identity_map(s, 1);
      CHECK(equals(compose(h, compose(g, f)), compose(compose(h, g), f)));
      CHECK(equals(compose(f, id), f));
      CHECK(equals(compose(inverse(f), f), id));
      CHECK(equals(reduce(f), f));
      std::mt19937_64 points(trial);
      const Point p = point_in(points, s, 1);
      CHECK(evaluate(compose(g, f), p) == evaluate(g, evaluate(f, p)));
    }
  }

  TEST_CASE("property: elementary relations are closed under sandwiching") {
    std::mt19937_64 rng(32);
    const auto shapes = enumerate_elementary(2, false);
    for (int trial = 0; trial < 200; ++trial) {
      const PVertex x = gen::random_vertex(rng, 2, 1);
      const Covering u = shapes[rng() % shapes.size()];
      const auto coarser = enumerate_coarsenings(u);
      const Covering w = coarser[rng() % coarser.size()];
      const PVertex y = split_vertex(x, u);
      const PVertex mid = split_vertex(x, w);
      REQUIRE(pv_elem_le(x, y));
      CHECK(pv_le(mid, y).has_value());
      CHECK(pv_elem_le(x, mid));
      CHECK(pv_elem_le(mid, y));
    }
  }

  TEST_CASE("property: the action preserves the relations") {
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      auto rng = gen::trial_rng(33, trial);
      const PVertex x = gen::random_vertex(rng, 2, 1);
      const Covering along = gen::random_covering(rng, 2, 1, 6, 6, 2);
      const PVertex y = split_vertex(x, along);
      const DyadicMap g = gen::random_map(rng, 2, 1, 1, 4);
      CHECK(pv_le(act(x, g), act(y, g)).has_value());
      CHECK(pv_elem_le(x, y) == pv_elem_le(act(x, g), act(y, g)));
      CHECK(pv_velem_le(x, y) == pv_velem_le(act(x, g), act(y, g)));
    }
  }

  TEST_CASE("malformed maps are rejected") {
    CHECK_THROWS_AS(DyadicMap(2, 1, 1, {{sq(kLo, kAll), sq(kHi, kAll)}}), InvalidInput);
    CHECK_THROWS_AS(canonicalize(identity_map(2, 2)), Error);
  }
}
