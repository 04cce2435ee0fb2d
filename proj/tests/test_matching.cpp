#include "doctest.h"
#include "steinforge/error.hpp"
#include "steinforge/matching.hpp"

using namespace steinforge;

namespace {

std::size_t power(std::size_t base, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= base;
  return r;
}

std::size_t betti(const HomologyReport& h, int d) {
  const HomologyGroup* g = h.at(d);
  return g ? g->betti : 0;
}

}  // namespace

TEST_SUITE("matching") {
  TEST_CASE("coloured complete graphs") {
    const Multigraph k4 = make_sKn(1, 4);
    CHECK(k4.edges.size() == 6);
    CHECK(make_sKn(2, 3).edges.size() == 6);
    const Multigraph three = make_sKn(3, 2);
    REQUIRE(three.edges.size() == 3);
    for (const auto& e : three.edges) CHECK((e.u == 1 && e.v == 2));
    CHECK(orient(make_sKn(2, 3)).edges.size() == 12);
    CHECK_THROWS_AS(make_sKn(0, 2), InvalidInput);
  }

  TEST_CASE("small matching complexes") {
    const SimplicialComplex k4 = matching_complex(make_sKn(1, 4), false);
    CHECK(k4.count(0) == 6);
    CHECK(k4.count(1) == 3);
    CHECK(k4.count(2) == 0);
    CHECK(betti(homology(k4), 0) == 2);
    const SimplicialComplex oriented = matching_complex(make_sKn(2, 2), true);
    CHECK(oriented.count(0) == 4);
    CHECK(oriented.dim() == 0);
    const SimplicialComplex k3 = matching_complex(make_sKn(2, 3), false);
    CHECK(k3.count(0) == 6);
    CHECK(k3.dim() == 0);
  }

  TEST_CASE("bound functions") {
    CHECK(nu(4) == 0);
    CHECK(nu(5) == 1);
    CHECK(nu(8) == 2);
    CHECK(nu(2) == 0);
    CHECK(nu(1) == -1);
    CHECK(eta(6, 2) == 1);
    CHECK(eta(5, 2) == 0);
    CHECK(eta(9, 3) == 0);
    CHECK(eta(1, 2) == -1);
  }

  TEST_CASE("connectivity of M(K5) and M(K4)") {
    CHECK(connectivity_report(matching_complex(make_sKn(1, 5), false), nu(5) - 1).pass);
    CHECK_FALSE(connectivity_report(matching_complex(make_sKn(1, 4), false), 0).pass);
  }

  TEST_CASE("projection fibres") {
    const FiberCheck vertex = check_projection_fiber(2, 4, {{1, 2}});
    CHECK(vertex.join_identity);
    CHECK(vertex.spherical);
    CHECK(vertex.k == 0);
    CHECK(vertex.rank == 1);
    const FiberCheck pair = check_projection_fiber(2, 4, {{1, 2}, {3, 4}});
    CHECK(pair.spherical);
    CHECK(pair.k == 1);
    CHECK(pair.rank == 1);
    const SimplicialComplex s1 = projection_fiber(1, 4, {{1, 2}, {3, 4}});
    CHECK(homology(s1).connectivity() >= s1.dim());
    CHECK(s1.count(1) == 1);
  }

  TEST_CASE("orientation fibres") {
    const Multigraph g = make_sKn(2, 5);
    const int a = *edge_id(g, Edge{1, 2, 1, false});
    const int b = *edge_id(g, Edge{3, 4, 2, false});
    const int c = *edge_id(g, Edge{1, 5, 2, false});
    const FiberCheck v = check_orientation_fiber(2, 5, {a});
    CHECK(v.spherical);
    CHECK(v.k == 0);
    CHECK(projection_fiber(2, 5, {}).empty());
    CHECK(orientation_fiber(2, 5, {}).empty());
    const FiberCheck e = check_orientation_fiber(2, 5, {a, b});
    CHECK(e.join_identity);
    CHECK(e.spherical);
    CHECK(e.k == 1);
    CHECK(e.rank == 1);
    CHECK(orientation_fiber(2, 5, {a, b}).count(1) == 4);
    (void)c;
  }

  TEST_CASE("property: face counts match a closed formula") {
    for (int s = 1; s <= 3; ++s)
      for (int n = 2; n <= 6; ++n) {
        CAPTURE(s);
        CAPTURE(n);
        const SimplicialComplex plain = matching_complex(make_sKn(s, n), false);
        const SimplicialComplex oriented = matching_complex(make_sKn(s, n), true);
        for (int k = 1; 2 * k <= n; ++k) {
          const std::size_t base = matchings_of_complete_graph(n, k);
          CHECK(plain.count(k - 1) == base * power(static_cast<std::size_t>(s), k));
          CHECK(oriented.count(k - 1) == base * power(static_cast<std::size_t>(2 * s), k));
        }
      }
    CHECK(matchings_of_complete_graph(6, 3) == 15);
    CHECK(matchings_of_complete_graph(5, 2) == 15);
  }

  TEST_CASE("property: links of vertices are smaller matching complexes") {
    for (int n = 3; n <= 8; ++n) CHECK(link_is_smaller_matching_complex(n));
  }

  TEST_CASE("property: every simplex is a matching") {
    const Multigraph g = make_sKn(2, 6);
    const SimplicialComplex k = matching_complex(g, false);
    for (int d = 1; d <= k.dim(); ++d)
      for (const auto& simplex : k.simplices(d))
        for (std::size_t i = 0; i < simplex.size(); ++i)
          for (std::size_t j = i + 1; j < simplex.size(); ++j)
            CHECK(g.edges[static_cast<std::size_t>(simplex[i])].disjoint(g.edges[static_cast<std::size_t>(simplex[j])]));
  }
}
