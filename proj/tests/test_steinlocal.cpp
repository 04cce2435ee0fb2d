#include <algorithm>

#include "doctest.h"
#include "steinforge/error.hpp"
#include "steinforge/figures.hpp"
#include "steinforge/matching.hpp"
#include "steinforge/random.hpp"
#include "support.hpp"

using namespace testing;

namespace {

MergingPart single(int label) { return part(2, {{label, sq(kAll, kAll)}}); }
MergingPart side_by_side(int left, int right) { return part(2, {{left, sq(kLo, kAll)}, {right, sq(kHi, kAll)}}); }
MergingPart grid(int a, int b, int c, int d) {
  return part(2, {{a, sq(kLo, kHi)}, {b, sq(kHi, kHi)}, {c, sq(kLo, kLo)}, {d, sq(kHi, kLo)}});
}

// Five bricks of the cube, none of which can be merged with a proper subset
// of the others into a brick.
Merging pinwheel() {
  return Merging(3, 5,
                 {part(3, {{1, box({kAll, kLo, kLo})},
                           {2, box({kLo, kAll, kHi})},
                           {3, box({kLo, kHi, kLo})},
                           {4, box({kHi, kLo, kHi})},
                           {5, box({kHi, kHi, kAll})}})});
}

}  // namespace

TEST_SUITE("steinlocal") {
  TEST_CASE("mergings validate their parts") {
    CHECK_NOTHROW(Merging(2, 2, {side_by_side(1, 2)}));
    CHECK_THROWS_AS(Merging(2, 2, {single(1), single(2)}), InvalidInput);
    CHECK_NOTHROW(Merging(2, 2, {single(1), single(2)}, false));
    CHECK_THROWS_AS(Merging(2, 3, {side_by_side(1, 2)}), InvalidInput);
    // A quarter-width strip is not elementary.
    const MergingPart strips = part(2, {{1, sq(kQ0, kAll)}, {2, sq(kQ1, kAll)}, {3, sq(kHi, kAll)}});
    CHECK_THROWS_AS(Merging(2, 3, {strips}), InvalidInput);
  }

  TEST_CASE("small posets") {
    const MergingPoset ve2 = enumerate_posets(2, 2, true);
    CHECK(ve2.size() == 4);
    CHECK(ve2.order.relation_size() == 0);
    const MergingPoset e2 = enumerate_posets(1, 2, false);
    CHECK(e2.size() == 2);
    CHECK(enumerate_posets(1, 2, true).size() == 2);
    CHECK(enumerate_posets(2, 3, false).size() == 36);
    CHECK(enumerate_posets(2, 4, false).size() == 192);
    CHECK_THROWS_AS(enumerate_posets(3, 6, false), GuardExceeded);
  }

  TEST_CASE("single-pair mergings number s n (n - 1)") {
    for (int s = 1; s <= 3; ++s)
      for (int n = 2; n <= 4; ++n) {
        const MergingPoset ve = enumerate_posets(s, n, true);
        const auto pairs = std::count_if(ve.elements.begin(), ve.elements.end(),
                                         [](const Merging& u) { return u.blocks() == u.n() - 1; });
        CHECK(static_cast<std::size_t>(pairs) == static_cast<std::size_t>(s * n * (n - 1)));
      }
  }

  TEST_CASE("further splitting") {
    const Merging u(2, 4, {grid(1, 2, 3, 4)});
    const Merging v(2, 4, {side_by_side(1, 2), side_by_side(3, 4)});
    CHECK(merging_le(u, v));
    CHECK_FALSE(merging_le(v, u));
    CHECK(merging_le(u, u));
    const Merging w(2, 4, {grid(2, 1, 3, 4)});
    CHECK_FALSE(merging_le(u, w));
    CHECK_FALSE(merging_le(w, u));
    // Stacking 1 over 3 is a different split of the same grid.
    const Merging x(2, 4, {part(2, {{1, sq(kAll, kHi)}, {3, sq(kAll, kLo)}}), part(2, {{2, sq(kAll, kHi)}, {4, sq(kAll, kLo)}})});
    CHECK(merging_le(u, x));
    CHECK_FALSE(merging_le(v, x));
  }

  TEST_CASE("merging maps send block j onto brick j") {
    const Merging u(2, 4, {grid(1, 2, 3, 4)});
    const DyadicMap f = merging_map(u);
    CHECK(f.m() == 4);
    CHECK(f.n() == 1);
    const Point p = evaluate(f, Point{2, {Rational(0), Rational(0)}});
    CHECK(p == Point{1, {Rational(1, 2), Rational(1, 2)}});
  }

  TEST_CASE("heights") {
    const Merging u(2, 4, {grid(1, 2, 3, 4)});
    const Merging v(2, 4, {side_by_side(1, 2), side_by_side(3, 4)});
    CHECK(height(u) == Height{{4}, 1});
    CHECK(height(v) == Height{{0}, 2});
    CHECK(height(v) < height(u));
    for (const auto& m : enumerate_posets(3, 3, true).elements) CHECK(height(m).c == std::vector<int>{0, 0});
  }

  TEST_CASE("very elementary mergings are oriented matchings") {
    const Merging u = figures::ve_example();
    const Multigraph g = orient(make_sKn(2, 5));
    Simplex expected{*edge_id(g, Edge{5, 2, 2, true}), *edge_id(g, Edge{1, 3, 1, true})};
    std::sort(expected.begin(), expected.end());
    CHECK(ve_image(u) == expected);
    const VeIsoReport r = ve_iso(2, 4);
    CHECK(r.pass());
    CHECK(r.single_pair == 24);
    CHECK(r.elements == r.faces);
    CHECK_THROWS_AS(ve_image(Merging(2, 4, {grid(1, 2, 3, 4)})), PreconditionError);
  }

  TEST_CASE("property: the height rules on E_4") {
    const MergingPoset e = enumerate_posets(2, 4, false);
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b : e.order.above(a)) {
        const Height& x = e.heights[a];
        const Height& y = e.heights[b];
        CHECK(x.c >= y.c);
        CHECK(x.b < y.b);
        CHECK((x < y) == (x.c == y.c));
        CHECK((x > y) == (x.c > y.c));
      }
  }

  TEST_CASE("descending link of a grid with two singletons") {
    const MergingPoset e = enumerate_posets(2, 6, false);
    const Merging u(2, 6, {grid(1, 2, 3, 4), single(5), single(6)});
    const auto at = e.find(u);
    REQUIRE(at.has_value());
    const DescendingLink link = descending_link(e, *at);
    CHECK(link.down.size() == 4);
    CHECK(link.down_complex.count(1) == 0);
    CHECK_FALSE(link.up.empty());
    CHECK(link.matches_height);
    CHECK(link.cross_comparable);
    CHECK(link.join_identity);
    const NoTwoBricksVerdict v = no_two_bricks_check(e, *at);
    CHECK(v.k_b == 1);
    CHECK(v.k_s == 2);
    CHECK(v.pass());
  }

  TEST_CASE("two-brick parts contract the up-link") {
    const auto ex = figures::two_brick_example();
    CHECK(merging_le(ex.u, ex.v));
    CHECK(merging_le(ex.v0, ex.v));
    CHECK(merging_le(ex.v0, ex.z_b));
    CHECK(two_brick_parts(ex.u) == std::vector<std::size_t>{1});
    CHECK(redo_except(ex.u, 1, ex.v) == ex.v0);
    CHECK(maximal_split_except(ex.u, 1) == ex.z_b);
    const MergingPoset e = enumerate_posets(2, 6, false);
    const auto at = e.find(ex.u);
    REQUIRE(at.has_value());
    const auto verdicts = two_bricks_certificate(e, *at);
    REQUIRE(verdicts.size() == 1);
    CHECK(verdicts.front().pass());
  }

  TEST_CASE("two_bricks_certificate rejects inapplicable elements") {
    const MergingPoset e = enumerate_posets(2, 4, false);
    const auto grid_at = e.find(Merging(2, 4, {grid(1, 2, 3, 4)}));
    REQUIRE(grid_at.has_value());
    CHECK_THROWS_AS(two_bricks_certificate(e, *grid_at), PreconditionError);
    const auto ve_at = e.find(Merging(2, 4, {side_by_side(1, 2), single(3), single(4)}));
    REQUIRE(ve_at.has_value());
    CHECK_THROWS_AS(two_bricks_certificate(e, *ve_at), PreconditionError);
    CHECK_THROWS_AS(no_two_bricks_check(e, *ve_at), PreconditionError);
  }

  TEST_CASE("the pinwheel of the cube has an empty descending link") {
    const Merging u = pinwheel();
    CHECK(enumerate_coarsenings(strip_labels(u.parts().front().covering)).size() == 2);
    const MergingPoset e = enumerate_posets(3, 5, false);
    const auto at = e.find(u);
    REQUIRE(at.has_value());
    CHECK(e.order.above(*at).empty());
    const NoTwoBricksVerdict v = no_two_bricks_check(e, *at);
    CHECK(v.k_b == 1);
    CHECK(v.k_s == 0);
    CHECK(v.required_bound == -2);
    CHECK(v.pass());
    // A big block does not always contribute a nonempty factor to the up-link.
    CHECK_FALSE(v.uplink.pass);
    CHECK_FALSE(v.intermediate.pass);
    CHECK_FALSE(v.connectivity.nonempty);
  }

  TEST_CASE("property: random descending links in E_5") {
    const MergingPoset e = enumerate_posets(2, 5, false);
    std::mt19937_64 rng(51);
    for (int trial = 0; trial < 40; ++trial) {
      const std::size_t u = rng() % e.size();
      const DescendingLink link = descending_link(e, u);
      CHECK(link.matches_height);
      CHECK(link.cross_comparable);
      CHECK(link.join_identity);
    }
  }

  TEST_CASE("intervals and the cube lemma") {
    const PVertex x = canonicalize(identity_map(2, 1));
    const PVertex z = split_vertex(x, figures::core_left());
    const IntervalPoset p = interval_poset(x, z);
    CHECK(p.coverings.size() == enumerate_coarsenings(figures::core_left()).size());
    CHECK(p.order.less(p.bottom, p.top));
    CHECK(suspension_identity(p));
    const CubeVerdict v = cube_lemma_check(x, z);
    CHECK(v.pass());
    CHECK(v.certificate.valid);
    CHECK(homology(interval_complex(p, IntervalKind::open)).connectivity() >= 0);
    CHECK_THROWS_AS(cube_lemma_check(x, split_vertex(x, quarters())), PreconditionError);
    CHECK_THROWS_AS(interval_poset(z, x), PreconditionError);
  }

  TEST_CASE("elementary-only interval complexes drop long chains") {
    const PVertex x = canonicalize(identity_map(2, 1));
    const IntervalPoset p = interval_poset(x, split_vertex(x, figures::core_left()));
    const SimplicialComplex all = interval_complex(p, IntervalKind::closed);
    const SimplicialComplex elem = interval_complex(p, IntervalKind::closed, true);
    CHECK(elem.subcomplex_of(all));
    CHECK(elem.total() < all.total());
    CHECK_FALSE(elem.contains({static_cast<int>(p.bottom), static_cast<int>(p.top)}));
  }

  TEST_CASE("Morse pairs") {
    const FinitePoset chain({{1}, {2}, {}});
    const MorseVerdict v = morse_pair_check(chain, {{0}, {1}, {2}}, 2);
    CHECK(v.pass());
    CHECK(v.levels.size() == 3);
    CHECK_THROWS_AS(morse_pair_check(chain, {{0}, {0}, {1}}, 2), PreconditionError);
    const MergingPoset e = enumerate_posets(2, 4, false);
    CHECK(morse_pair_check(e.order, height_keys(e), 2).pass());
  }

  TEST_CASE("ambient descending links") {
    const PVertex two = split_vertex(canonicalize(identity_map(2, 1)), vertical_halves());
    const AmbientLink link = desc_link_of_vertex(two);
    CHECK(link.size() == 4);
    CHECK(link.all_elementary_below);
    CHECK(link.isomorphic);
    CHECK(desc_link_of_vertex(canonicalize(identity_map(2, 1))).size() == 0);
  }

  TEST_CASE("property: random cube intervals") {
    for (std::uint64_t trial = 0; trial < 15; ++trial) {
      auto rng = gen::trial_rng(52, trial);
      const PVertex x = gen::random_vertex(rng, 2, 1);
      Covering along;
      do {
        along = gen::random_covering(rng, 2, 1, 8, 8, 4);
      } while (classify(along).elementary);
      const PVertex z = split_vertex(x, along);
      CHECK(cube_lemma_check(x, z).pass());
      CHECK(suspension_identity(interval_poset(x, z, false)));
    }
  }
}
