#include <algorithm>
#include <random>

#include "doctest.h"
#include "steinforge/complexes.hpp"
#include "steinforge/error.hpp"

using namespace steinforge;

namespace {

SimplicialComplex hollow_triangle() {
  SimplicialComplex k;
  k.add({0, 1});
  k.add({1, 2});
  k.add({0, 2});
  return k;
}

SimplicialComplex points(std::initializer_list<int> ids) {
  SimplicialComplex k;
  for (int v : ids) k.add({v});
  return k;
}

std::size_t betti(const HomologyReport& h, int d) {
  const HomologyGroup* g = h.at(d);
  return g ? g->betti : 0;
}

// Random complex: the closure of a few random simplices on `n` vertices.
SimplicialComplex random_complex(std::mt19937_64& rng, int n, int facets, int max_size) {
  SimplicialComplex k;
  std::uniform_int_distribution<int> size(1, max_size);
  for (int f = 0; f < facets; ++f) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(static_cast<std::size_t>(size(rng)));
    k.add(all);
  }
  return k;
}

}  // namespace

TEST_SUITE("complexes") {
  TEST_CASE("order complexes") {
    const FinitePoset chain({{1}, {}});
    const SimplicialComplex c = order_complex(chain);
    CHECK(c.count(0) == 2);
    CHECK(c.count(1) == 1);
    const FinitePoset antichain({{}, {}});
    const SimplicialComplex a = order_complex(antichain);
    CHECK(a.count(0) == 2);
    CHECK(a.dim() == 0);
    // Face poset of the boundary of a triangle: three vertices below three edges.
    const FinitePoset faces({{3, 5}, {3, 4}, {4, 5}, {}, {}, {}});
    const SimplicialComplex b = order_complex(faces);
    CHECK(b.count(0) == 6);
    CHECK(b.count(1) == 6);
    CHECK(betti(homology(b), 1) == 1);
  }

  TEST_CASE("posets close transitively and reject cycles") {
    const FinitePoset p({{1}, {2}, {}});
    CHECK(p.less(0, 2));
    CHECK(p.relation_size() == 3);
    CHECK(p.opposite().less(2, 0));
    CHECK_THROWS(FinitePoset({{1}, {0}}));
  }

  TEST_CASE("Smith normal form") {
    CHECK(smith_normal_form({{1, 0}, {0, 2}}).invariants == std::vector<BigInt>{1, 2});
    const SmithResult r = smith_normal_form({{2, 4}, {6, 8}});
    CHECK(r.invariants == std::vector<BigInt>{2, 4});
    CHECK(multiply(multiply(r.u, IntMatrix{{2, 4}, {6, 8}}), r.v) == r.d);
    CHECK(unimodular(r.u));
    CHECK(unimodular(r.v));
    CHECK(smith_normal_form({{0, 0}, {0, 0}}).invariants.empty());
  }

  TEST_CASE("property: Smith certificates on random matrices agree with the sparse route") {
    std::mt19937_64 rng(41);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> dim(1, 5);
    for (int trial = 0; trial < 100; ++trial) {
      const int rows = dim(rng);
      const int cols = dim(rng);
      IntMatrix m(static_cast<std::size_t>(rows), std::vector<BigInt>(static_cast<std::size_t>(cols)));
      SparseMatrix sparse{static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), {}};
      for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) {
          const int v = entry(rng);
          m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
          if (v != 0) sparse.entries.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), v});
        }
      const SmithResult r = smith_normal_form(m);
      CHECK(multiply(multiply(r.u, m), r.v) == r.d);
      CHECK(unimodular(r.u));
      CHECK(unimodular(r.v));
      for (std::size_t i = 1; i < r.invariants.size(); ++i) CHECK(r.invariants[i] % r.invariants[i - 1] == 0);
      CHECK(smith_invariants(sparse) == r.invariants);
    }
  }

  TEST_CASE("homology of small complexes") {
    CHECK(homology(points({0})).connectivity() >= 0);
    const HomologyReport t = homology(hollow_triangle());
    CHECK(betti(t, 0) == 0);
    CHECK(betti(t, 1) == 1);
    SimplicialComplex filled;
    filled.add({0, 1, 2});
    CHECK(homology(filled).connectivity() >= 1);
    const HomologyReport two = homology(points({0, 1, 2}));
    CHECK(betti(two, 0) == 2);
    CHECK(two.components == 3);
  }

  TEST_CASE("torsion: the six-vertex projective plane") {
    SimplicialComplex rp2;
    for (Simplex f : std::vector<Simplex>{{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                                           {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {1, 3, 5}, {2, 4, 5}})
      rp2.add(f);
    const HomologyReport h = homology(rp2);
    REQUIRE(h.at(1) != nullptr);
    CHECK(h.at(1)->betti == 0);
    CHECK(h.at(1)->torsion == std::vector<BigInt>{2});
    CHECK(betti(h, 2) == 0);
  }

  TEST_CASE("relative homology") {
    SimplicialComplex filled;
    filled.add({0, 1, 2});
    const HomologyReport pair = relative_homology(filled, hollow_triangle());
    CHECK(betti(pair, 2) == 1);
    CHECK(betti(pair, 1) == 0);
    const HomologyReport self = relative_homology(filled, filled);
    for (const auto& g : self.groups) CHECK(g.trivial());
    // H_k(cone L, L) = H~_{k-1}(L), with L the hollow triangle.
    const SimplicialComplex base = hollow_triangle();
    SimplicialComplex cone = base;
    for (const auto& e : base.simplices(1)) cone.add({e[0], e[1], 9});
    const HomologyReport c = relative_homology(cone, base);
    CHECK(betti(c, 2) == 1);
    CHECK(betti(c, 1) == 0);
  }

  TEST_CASE("connectivity reports") {
    SimplicialComplex empty;
    const ConnectivityVerdict e = connectivity_report(empty, -1);
    CHECK_FALSE(e.pass);
    CHECK(connectivity_report(empty, -2).pass);
    CHECK(connectivity_report(points({0}), 3).pass);
    const ConnectivityVerdict two = connectivity_report(points({0, 1}), 0);
    CHECK_FALSE(two.pass);
    CHECK(two.separated.size() == 2);
    const ConnectivityVerdict loop = connectivity_report(hollow_triangle(), 1);
    CHECK_FALSE(loop.pass);
    CHECK(loop.failing_degree == 1);
    CHECK_FALSE(loop.cycle.empty());
  }

  TEST_CASE("contraction certificates") {
    const FinitePoset one(std::vector<std::vector<std::size_t>>(1));
    CHECK(contraction_certificate(one, {}, 0).valid);
    const FinitePoset antichain({{}, {}});
    const std::vector<std::vector<std::size_t>> to_zero{{0, 0}};
    CHECK_FALSE(contraction_certificate(antichain, to_zero, 0).valid);
    // A chain 0 < 1 < 2 collapses onto its top in one step.
    const FinitePoset chain({{1}, {2}, {}});
    const std::vector<std::vector<std::size_t>> to_top{{2, 2, 2}};
    CHECK(contraction_certificate(chain, to_top, 2).valid);
    // A non-monotone step is rejected.
    const std::vector<std::vector<std::size_t>> swap{{2, 1, 0}, {2, 2, 2}};
    CHECK_FALSE(contraction_certificate(chain, swap, 2).valid);
  }

  TEST_CASE("joins") {
    const SimplicialComplex edge = join_complex(points({0}), points({1}));
    CHECK(edge.count(1) == 1);
    const SimplicialComplex circle = join_complex(points({0, 1}), points({2, 3}));
    CHECK(circle.count(0) == 4);
    CHECK(circle.count(1) == 4);
    CHECK(betti(homology(circle), 1) == 1);
    const SimplicialComplex cone = join_complex(hollow_triangle(), points({7}));
    CHECK(homology(cone).connectivity() >= 1);
  }

  TEST_CASE("property: random complexes") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 60; ++trial) {
      const SimplicialComplex k = random_complex(rng, 7, 5, 4);
      CHECK(k.well_formed());
      CHECK(boundary_squares_to_zero(k));
      // Reduced Euler characteristic equals the alternating sum of Betti numbers.
      const HomologyReport h = homology(k);
      long chi = -1;
      long betti_sum = 0;
      for (int d = 0; d <= k.dim(); ++d) {
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long>(k.count(d));
        betti_sum += (d % 2 == 0 ? 1 : -1) * static_cast<long>(betti(h, d));
      }
      CHECK(chi == betti_sum);
      // Cones are acyclic.
      const SimplicialComplex cone = join_complex(k, points({100}));
      CHECK(homology(cone).connectivity() >= cone.dim());
      // Truncation does not change homology below the cap.
      const HomologyReport low = homology(k.skeleton(2), true, 1);
      for (int d = 0; d <= std::min(1, k.dim()); ++d) CHECK(betti(low, d) == betti(h, d));
    }
  }
}
