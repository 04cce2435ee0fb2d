#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "steinforge/complexes.hpp"

namespace steinforge {

/// Edge {u, v} of colour 1..s.  Oriented edges point from u to v; unoriented
/// edges are stored with u < v.
struct Edge {
  int u = 0;
  int v = 0;
  int color = 1;
  bool oriented = false;

  bool disjoint(const Edge& o) const { return u != o.u && u != o.v && v != o.u && v != o.v; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Multigraph {
  int n = 0;
  int s = 1;
  std::vector<Edge> edges;  // vertex id of a matching complex = index here
};

/// n nodes, s parallel edges of colours 1..s between every pair; edges
/// ordered by (u, v, colour).
Multigraph make_sKn(int s, int n);
/// Both orientations of every edge, ordered by (min, max, colour, u > v).
Multigraph orient(const Multigraph& g);
/// Index of an edge in g.edges.
std::optional<int> edge_id(const Multigraph& g, const Edge& e);

/// Simplices are sets of pairwise node-disjoint edges.  With `oriented` the
/// vertices are the orientations of g's edges (g itself must be unoriented).
SimplicialComplex matching_complex(const Multigraph& g, bool oriented, std::optional<int> max_dim = std::nullopt,
                                   const Guards& guards = default_guards());

/// Preimage of the closed simplex sigma of M(K_n) (a matching given as node
/// pairs) in M(sK_n); vertex ids refer to make_sKn(s, n).
SimplicialComplex projection_fiber(int s, int n, const std::vector<std::pair<int, int>>& sigma);
/// Preimage of the closed simplex sigma of M(sK_n) (ids into make_sKn(s, n))
/// in the oriented complex; vertex ids refer to orient(make_sKn(s, n)).
SimplicialComplex orientation_fiber(int s, int n, const std::vector<int>& sigma);

struct FiberCheck {
  bool join_identity = false;  // fiber equals the join of its vertex fibres
  bool spherical = false;      // reduced homology free and concentrated in degree k
  int k = -1;
  std::size_t rank = 0;        // rank of H~_k
};
FiberCheck check_projection_fiber(int s, int n, const std::vector<std::pair<int, int>>& sigma);
FiberCheck check_orientation_fiber(int s, int n, const std::vector<int>& sigma);

/// nu(l) = floor((l - 2) / 3)
int nu(int l);
/// eta(l, s) = floor((l - 2) / 2^s)
int eta(int l, int s);
struct Bounds {
  int nu;
  int eta;
};
Bounds bounds(int l, int s);

/// Number of k-edge matchings of K_n.
std::size_t matchings_of_complete_graph(int n, int k);

/// The link of the vertex {1, 2} in M(K_n) equals M(K_{n-2}) on nodes 3..n.
bool link_is_smaller_matching_complex(int n);

}  // namespace steinforge
