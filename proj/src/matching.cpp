#include "steinforge/matching.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "steinforge/error.hpp"

namespace steinforge {

Multigraph make_sKn(int s, int n) {
  if (s < 1) throw InvalidInput("make_sKn: s must be at least 1");
  if (n < 1) throw InvalidInput("make_sKn: n must be at least 1");
  Multigraph g{n, s, {}};
  for (int u = 1; u <= n; ++u)
    for (int v = u + 1; v <= n; ++v)
      for (int c = 1; c <= s; ++c) g.edges.push_back(Edge{u, v, c, false});
  return g;
}

Multigraph orient(const Multigraph& g) {
  Multigraph out{g.n, g.s, {}};
  for (const auto& e : g.edges) {
    if (e.oriented) throw InvalidInput("orient: graph is already oriented");
    out.edges.push_back(Edge{e.u, e.v, e.color, true});
    out.edges.push_back(Edge{e.v, e.u, e.color, true});
  }
  return out;
}

std::optional<int> edge_id(const Multigraph& g, const Edge& e) {
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    if (g.edges[i] == e) return static_cast<int>(i);
  return std::nullopt;
}

SimplicialComplex matching_complex(const Multigraph& g, bool oriented, std::optional<int> max_dim,
                                   const Guards& guards) {
  const Multigraph vertices = oriented ? orient(g) : g;
  const auto& edges = vertices.edges;
  if (edges.size() > guards.max_matching_vertices)
    throw GuardExceeded("matching_complex: " + std::to_string(edges.size()) + " vertices exceeds bound " +
                        std::to_string(guards.max_matching_vertices));
  std::vector<std::vector<Simplex>> levels;
  std::size_t produced = 0;
  Simplex current;
  const int cap = max_dim.value_or(std::numeric_limits<int>::max());
  std::function<void(std::size_t)> grow = [&](std::size_t from) {
    for (std::size_t i = from; i < edges.size(); ++i) {
      const bool ok = std::all_of(current.begin(), current.end(),
                                  [&](int j) { return edges[static_cast<std::size_t>(j)].disjoint(edges[i]); });
      if (!ok) continue;
      current.push_back(static_cast<int>(i));
      const std::size_t d = current.size() - 1;
      if (levels.size() <= d) levels.resize(d + 1);
      levels[d].push_back(current);
      if (++produced > guards.max_simplices) throw GuardExceeded("matching_complex: too many simplices");
      if (static_cast<int>(d) < cap) grow(i + 1);
      current.pop_back();
    }
  };
  grow(0);
  SimplicialComplex k(max_dim);
  for (auto& level : levels)
    for (auto& s : level) k.add_closed(std::move(s));
  return k;
}

namespace {

void require_matching(int n, const std::vector<std::pair<int, int>>& sigma) {
  std::vector<int> seen;
  for (auto [a, b] : sigma) {
    if (a < 1 || b < 1 || a > n || b > n || a == b) throw InvalidInput("fiber: invalid edge of K_n");
    seen.push_back(a);
    seen.push_back(b);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InvalidInput("fiber: edges are not pairwise disjoint");
}

SimplicialComplex discrete(const std::vector<int>& points) {
  SimplicialComplex k;
  for (int p : points) k.add_closed({p});
  return k;
}

FiberCheck check(const SimplicialComplex& fiber, const std::vector<std::vector<int>>& vertex_fibers,
                 std::size_t expected_rank) {
  FiberCheck out;
  out.k = static_cast<int>(vertex_fibers.size()) - 1;
  SimplicialComplex joined;
  for (const auto& f : vertex_fibers) joined = join_complex(joined, discrete(f));
  out.join_identity = fiber.same_simplices(joined);
  if (vertex_fibers.empty()) {
    out.spherical = fiber.empty();
    return out;
  }
  const HomologyReport h = homology(fiber, true, out.k);
  out.spherical = true;
  for (const auto& g : h.groups) {
    if (!g.torsion.empty()) out.spherical = false;
    if (g.dim < out.k && g.betti != 0) out.spherical = false;
    if (g.dim == out.k) out.rank = g.betti;
  }
  out.spherical = out.spherical && out.rank == expected_rank;
  return out;
}

std::size_t power(std::size_t b, int e) {
  std::size_t r = 1;
  for (int i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

SimplicialComplex projection_fiber(int s, int n, const std::vector<std::pair<int, int>>& sigma) {
  require_matching(n, sigma);
  const Multigraph g = make_sKn(s, n);
  std::vector<int> keep;
  for (std::size_t i = 0; i < g.edges.size(); ++i)
    for (auto [a, b] : sigma)
      if (std::min(a, b) == g.edges[i].u && std::max(a, b) == g.edges[i].v) keep.push_back(static_cast<int>(i));
  return matching_complex(g, false).induced(keep);
}

SimplicialComplex orientation_fiber(int s, int n, const std::vector<int>& sigma) {
  const Multigraph g = make_sKn(s, n);
  for (std::size_t a = 0; a < sigma.size(); ++a) {
    if (sigma[a] < 0 || sigma[a] >= static_cast<int>(g.edges.size())) throw InvalidInput("fiber: unknown edge id");
    for (std::size_t b = a + 1; b < sigma.size(); ++b)
      if (!g.edges[sigma[a]].disjoint(g.edges[sigma[b]])) throw InvalidInput("fiber: not a simplex of M(sK_n)");
  }
  const Multigraph o = orient(g);
  std::vector<int> keep;
  for (std::size_t i = 0; i < o.edges.size(); ++i) {
    const Edge& e = o.edges[i];
    const Edge plain{std::min(e.u, e.v), std::max(e.u, e.v), e.color, false};
    for (int id : sigma)
      if (g.edges[id] == plain) keep.push_back(static_cast<int>(i));
  }
  return matching_complex(g, true).induced(keep);
}

FiberCheck check_projection_fiber(int s, int n, const std::vector<std::pair<int, int>>& sigma) {
  const Multigraph g = make_sKn(s, n);
  std::vector<std::vector<int>> parts;
  for (auto [a, b] : sigma) {
    std::vector<int> ids;
    for (int c = 1; c <= s; ++c) ids.push_back(*edge_id(g, Edge{std::min(a, b), std::max(a, b), c, false}));
    parts.push_back(std::move(ids));
  }
  return check(projection_fiber(s, n, sigma), parts, power(static_cast<std::size_t>(s - 1), static_cast<int>(sigma.size())));
}

FiberCheck check_orientation_fiber(int s, int n, const std::vector<int>& sigma) {
  const Multigraph g = make_sKn(s, n);
  const Multigraph o = orient(g);
  std::vector<std::vector<int>> parts;
  for (int id : sigma) {
    const Edge& e = g.edges.at(static_cast<std::size_t>(id));
    parts.push_back({*edge_id(o, Edge{e.u, e.v, e.color, true}), *edge_id(o, Edge{e.v, e.u, e.color, true})});
  }
  return check(orientation_fiber(s, n, sigma), parts, 1);
}

namespace {
int floor_div(int a, int b) { return a / b - ((a % b != 0) && ((a < 0) != (b < 0)) ? 1 : 0); }
}  // namespace

int nu(int l) { return floor_div(l - 2, 3); }

int eta(int l, int s) {
  if (s < 0 || s > 30) throw InvalidInput("eta: s out of range");
  return floor_div(l - 2, 1 << s);
}

Bounds bounds(int l, int s) { return {nu(l), eta(l, s)}; }

std::size_t matchings_of_complete_graph(int n, int k) {
  if (k < 0 || 2 * k > n) return 0;
  // C(n, 2k) * (2k - 1)!!
  std::size_t c = 1;
  for (int i = 0; i < 2 * k; ++i) c = c * static_cast<std::size_t>(n - i) / static_cast<std::size_t>(i + 1);
  for (int i = 2 * k - 1; i > 1; i -= 2) c *= static_cast<std::size_t>(i);
  return c;
}

bool link_is_smaller_matching_complex(int n) {
  if (n < 2) throw InvalidInput("link: need at least two nodes");
  const Multigraph g = make_sKn(1, n);
  const SimplicialComplex k = matching_complex(g, false);
  const int v = *edge_id(g, Edge{1, 2, 1, false});
  SimplicialComplex link;
  for (int d = 1; d <= k.dim(); ++d)
    for (const auto& s : k.simplices(d)) {
      if (!std::binary_search(s.begin(), s.end(), v)) continue;
      Simplex rest;
      for (int x : s)
        if (x != v) rest.push_back(x);
      link.add_closed(std::move(rest));
    }
  if (n < 4) return link.empty();
  const Multigraph small = make_sKn(1, n - 2);
  const SimplicialComplex expected = matching_complex(small, false).relabel([&](int id) {
    const Edge& e = small.edges[static_cast<std::size_t>(id)];
    return *edge_id(g, Edge{e.u + 2, e.v + 2, 1, false});
  });
  return link.same_simplices(expected);
}

}  // namespace steinforge
