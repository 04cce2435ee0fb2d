#include "steinforge/groupsv.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "steinforge/error.hpp"

namespace steinforge {

namespace {

Covering tiling(int s, int blocks, const std::vector<Piece>& pieces, bool sources) {
  Covering c{s, blocks, {}};
  c.bricks.reserve(pieces.size());
  int label = 1;
  for (const auto& p : pieces) {
    Brick b = sources ? p.source : p.target;
    b.label = label++;
    c.bricks.push_back(std::move(b));
  }
  return c;
}

Brick whole_block(int s, int block) {
  return Brick{block, std::nullopt, std::vector<DyadicInterval>(s, DyadicInterval::unit())};
}

Rational pow2(int e) {
  return e >= 0 ? Rational(BigInt(1) << e) : Rational(BigInt(1), BigInt(1) << -e);
}

// Image of a point of `from` under the affine product map from -> to.
std::vector<Rational> carry(const Brick& from, const Brick& to, std::span<const Rational> x) {
  std::vector<Rational> y;
  y.reserve(x.size());
  for (std::size_t d = 0; d < x.size(); ++d)
    y.push_back(to.edges[d].lower() + (x[d] - from.edges[d].lower()) * pow2(from.edges[d].l - to.edges[d].l));
  return y;
}

void require_maps_compatible(const DyadicMap& f, const DyadicMap& g, const char* op) {
  if (f.s() != g.s() || f.m() != g.m() || f.n() != g.n())
    throw InvalidInput(std::string(op) + ": maps act between different spaces");
}

}  // namespace

DyadicMap::DyadicMap(int s, int m, int n, std::vector<Piece> pieces)
    : s_(s), m_(m), n_(n), pieces_(std::move(pieces)) {
  for (auto& p : pieces_) {
    p.source.label.reset();
    p.target.label.reset();
  }
  if (auto v = validate_covering(tiling(s_, m_, pieces_, true)); !v)
    throw InvalidInput("dyadic map: invalid domain covering: " + v.reason);
  if (auto v = validate_covering(tiling(s_, n_, pieces_, false)); !v)
    throw InvalidInput("dyadic map: invalid codomain covering: " + v.reason);
}

DyadicMap DyadicMap::assume_valid(int s, int m, int n, std::vector<Piece> pieces) {
  DyadicMap f;
  f.s_ = s;
  f.m_ = m;
  f.n_ = n;
  f.pieces_ = std::move(pieces);
  return f;
}

Covering DyadicMap::domain() const { return tiling(s_, m_, pieces_, true); }
Covering DyadicMap::codomain() const { return tiling(s_, n_, pieces_, false); }

DyadicMap map_from_pairing(const Covering& domain, const Covering& codomain,
                           std::span<const std::pair<int, int>> pairs) {
  if (domain.s != codomain.s) throw InvalidInput("map: domain and codomain dimensions differ");
  if (!domain.labeled() || !codomain.labeled()) throw InvalidInput("map: coverings must be labeled");
  if (pairs.size() != domain.size() || pairs.size() != codomain.size())
    throw InvalidInput("map: pairing is not a bijection between the bricks");
  auto find = [](const Covering& c, int label) -> const Brick& {
    for (const auto& b : c.bricks)
      if (b.label == label) return b;
    throw InvalidInput("map: pairing refers to unknown label " + std::to_string(label));
  };
  std::vector<int> seen_d;
  std::vector<int> seen_c;
  std::vector<Piece> pieces;
  for (const auto& [dl, cl] : pairs) {
    seen_d.push_back(dl);
    seen_c.push_back(cl);
    pieces.push_back(Piece{find(domain, dl), find(codomain, cl)});
  }
  std::sort(seen_d.begin(), seen_d.end());
  std::sort(seen_c.begin(), seen_c.end());
  if (std::adjacent_find(seen_d.begin(), seen_d.end()) != seen_d.end() ||
      std::adjacent_find(seen_c.begin(), seen_c.end()) != seen_c.end())
    throw InvalidInput("map: pairing repeats a label");
  return DyadicMap(domain.s, domain.m, codomain.m, std::move(pieces));
}

DyadicMap identity_map(int s, int m) {
  std::vector<Piece> pieces;
  for (int b = 1; b <= m; ++b) pieces.push_back(Piece{whole_block(s, b), whole_block(s, b)});
  return DyadicMap(s, m, m, std::move(pieces));
}

DyadicMap splitting_along(const Covering& u) {
  require_valid(u);
  Covering c = u;
  if (c.labeled()) {
    std::sort(c.bricks.begin(), c.bricks.end(), [](const Brick& a, const Brick& b) { return a.label < b.label; });
  } else {
    c.sort();
  }
  std::vector<Piece> pieces;
  int block = 1;
  for (auto& b : c.bricks) {
    b.label.reset();
    pieces.push_back(Piece{b, whole_block(c.s, block++)});
  }
  return DyadicMap::assume_valid(c.s, c.m, static_cast<int>(c.size()), std::move(pieces));
}

Point evaluate(const DyadicMap& f, const Point& p) {
  if (p.block < 1 || p.block > f.m()) throw InvalidInput("evaluate: block outside the domain");
  if (static_cast<int>(p.x.size()) != f.s()) throw InvalidInput("evaluate: point has wrong dimension");
  for (const auto& x : p.x)
    if (x < 0 || x >= 1) throw InvalidInput("evaluate: coordinate outside [0, 1)");
  for (const auto& piece : f.pieces())
    if (piece.source.contains_point(p.block, p.x)) return Point{piece.target.block, carry(piece.source, piece.target, p.x)};
  throw std::logic_error("evaluate: domain bricks do not cover the point");
}

DyadicMap compose(const DyadicMap& g, const DyadicMap& f) {
  if (f.s() != g.s()) throw InvalidInput("compose: dimension mismatch");
  if (f.n() != g.m()) throw InvalidInput("compose: codomain of f is not the domain of g");
  const auto joined = join_pieces(f.codomain(), g.domain());
  std::vector<Piece> pieces;
  pieces.reserve(joined.size());
  for (const auto& jp : joined) {
    const Piece& fp = f.pieces()[jp.from_u];
    const Piece& gp = g.pieces()[jp.from_v];
    pieces.push_back(Piece{transfer(jp.brick, fp.target, fp.source), transfer(jp.brick, gp.source, gp.target)});
  }
  return DyadicMap::assume_valid(f.s(), f.m(), g.n(), std::move(pieces));
}

DyadicMap inverse(const DyadicMap& f) {
  std::vector<Piece> pieces;
  pieces.reserve(f.pieces().size());
  for (const auto& p : f.pieces()) pieces.push_back(Piece{p.target, p.source});
  return DyadicMap::assume_valid(f.s(), f.n(), f.m(), std::move(pieces));
}

bool equals(const DyadicMap& f, const DyadicMap& g) {
  require_maps_compatible(f, g, "equals");
  for (const auto& jp : join_pieces(f.domain(), g.domain())) {
    const Piece& fp = f.pieces()[jp.from_u];
    const Piece& gp = g.pieces()[jp.from_v];
    if (!transfer(jp.brick, fp.source, fp.target).same_region(transfer(jp.brick, gp.source, gp.target)))
      return false;
  }
  return true;
}

DyadicMap refine_domain(const DyadicMap& f, const Covering& finer) {
  if (!refines(finer, f.domain())) throw InvalidInput("refine_domain: covering does not refine the domain");
  std::vector<Piece> pieces;
  for (const auto& jp : join_pieces(finer, f.domain())) {
    const Piece& fp = f.pieces()[jp.from_v];
    pieces.push_back(Piece{jp.brick, transfer(jp.brick, fp.source, fp.target)});
  }
  return DyadicMap::assume_valid(f.s(), f.m(), f.n(), std::move(pieces));
}

DyadicMap reduce(const DyadicMap& f) {
  std::vector<Piece> pieces = f.pieces();
  auto by_source = [](const Piece& a, const Piece& b) { return compare_region(a.source, b.source) < 0; };
  for (bool merged = true; merged;) {
    merged = false;
    std::sort(pieces.begin(), pieces.end(), by_source);
    std::vector<bool> used(pieces.size(), false);
    std::vector<Piece> next;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (used[i]) continue;
      const Piece& p = pieces[i];
      for (int d = 0; d < f.s() && !used[i]; ++d) {
        const DyadicInterval& e = p.source.edges[d];
        if (e.l == 0 || e.is_upper_half()) continue;
        const DyadicInterval& te = p.target.edges[d];
        if (te.l == 0 || te.is_upper_half()) continue;
        Piece probe{p.source, p.target};
        probe.source.edges[d] = e.sibling();
        auto it = std::lower_bound(pieces.begin(), pieces.end(), probe, by_source);
        if (it == pieces.end() || !it->source.same_region(probe.source)) continue;
        const auto j = static_cast<std::size_t>(it - pieces.begin());
        if (used[j]) continue;
        Brick expected = p.target;
        expected.edges[d] = te.sibling();
        if (!it->target.same_region(expected)) continue;
        Piece joined = p;
        joined.source.edges[d] = e.ancestor(e.l - 1);
        joined.target.edges[d] = te.ancestor(te.l - 1);
        used[i] = used[j] = true;
        next.push_back(std::move(joined));
        merged = true;
      }
      if (!used[i]) {
        used[i] = true;
        next.push_back(p);
      }
    }
    pieces = std::move(next);
  }
  std::sort(pieces.begin(), pieces.end(), by_source);
  return DyadicMap::assume_valid(f.s(), f.m(), f.n(), std::move(pieces));
}

std::optional<Covering> splitting_covering(const DyadicMap& f) {
  std::vector<std::optional<Brick>> preimage(f.n() + 1);
  for (const auto& p : f.pieces()) {
    Brick implied{p.source.block, std::nullopt, {}};
    for (int d = 0; d < f.s(); ++d) {
      const DyadicInterval& a = p.source.edges[d];
      const DyadicInterval& t = p.target.edges[d];
      const int level = a.l - t.l;
      if (level < 0 || a.k < t.k) return std::nullopt;
      const std::uint64_t diff = a.k - t.k;
      if ((diff & ((std::uint64_t{1} << t.l) - 1)) != 0) return std::nullopt;
      implied.edges.push_back(DyadicInterval{level, diff >> t.l});
    }
    auto& slot = preimage[p.target.block];
    if (!slot) slot = implied;
    else if (!slot->same_region(implied)) return std::nullopt;
  }
  Covering u{f.s(), f.m(), {}};
  for (int j = 1; j <= f.n(); ++j) {
    if (!preimage[j]) return std::nullopt;
    preimage[j]->label = j;
    u.bricks.push_back(*preimage[j]);
  }
  u.sort();
  return u;
}

ArrowClass classify_arrow(const DyadicMap& f) {
  ArrowClass out;
  if (auto u = splitting_covering(f)) {
    out.splitting = true;
    out.nontrivial = f.n() > f.m();
    out.along = std::move(u);
  }
  if (auto u = splitting_covering(inverse(f))) {
    out.merging = true;
    if (!out.splitting) {
      out.nontrivial = f.m() > f.n();
      out.along = std::move(u);
    }
  }
  if (out.along) {
    const auto cls = classify(*out.along);
    out.elementary = cls.elementary;
    out.very_elementary = cls.very_elementary;
  }
  return out;
}

// ---------------------------------------------------------------- PVertex --

PVertex canonicalize(const DyadicMap& f) {
  if (f.m() != 1) throw InvalidInput("canonicalize: map must have a one-block domain");
  const int n = f.n();
  const std::vector<Rational> centre(f.s(), Rational(1, 2));
  std::vector<std::vector<Rational>> key(n + 1);
  for (const auto& p : f.pieces())
    if (p.target.contains_point(p.target.block, centre)) key[p.target.block] = carry(p.target, p.source, centre);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::sort(order.begin(), order.end(), [&key](int a, int b) { return key[a] < key[b]; });
  std::vector<int> relabel(n + 1);
  for (int i = 0; i < n; ++i) relabel[order[i]] = i + 1;
  std::vector<Piece> pieces = f.pieces();
  for (auto& p : pieces) p.target.block = relabel[p.target.block];
  return PVertex(reduce(DyadicMap::assume_valid(f.s(), 1, n, std::move(pieces))));
}

bool same_vertex(const PVertex& x, const PVertex& y) {
  return x.s() == y.s() && x.t() == y.t() && equals(x.map(), y.map());
}

std::optional<LeWitness> pv_le(const PVertex& x, const PVertex& y) {
  if (x.s() != y.s()) throw InvalidInput("pv_le: vertices of different dimension");
  if (y.t() < x.t()) return std::nullopt;
  DyadicMap z = compose(y.map(), inverse(x.map()));
  auto along = splitting_covering(z);
  if (!along) return std::nullopt;
  return LeWitness{std::move(z), std::move(*along)};
}

bool pv_lt(const PVertex& x, const PVertex& y) { return y.t() > x.t() && pv_le(x, y).has_value(); }

bool pv_elem_le(const PVertex& x, const PVertex& y) {
  auto w = pv_le(x, y);
  return w && classify(w->along).elementary;
}

bool pv_velem_le(const PVertex& x, const PVertex& y) {
  auto w = pv_le(x, y);
  return w && classify(w->along).very_elementary;
}

PVertex split_vertex(const PVertex& x, const Covering& along) {
  if (along.s != x.s() || along.m != x.t()) throw InvalidInput("split_vertex: covering lives on the wrong space");
  return canonicalize(compose(splitting_along(along), x.map()));
}

PVertex elementary_core(const PVertex& x, const PVertex& y) {
  auto w = pv_le(x, y);
  if (!w) throw PreconditionError("elementary_core: x is not below y");
  return split_vertex(x, meet(maximal_elementary(x.s(), x.t()), strip_labels(w->along)));
}

PVertex act(const PVertex& x, const DyadicMap& g) {
  if (g.m() != 1 || g.n() != 1 || g.s() != x.s()) throw InvalidInput("act: g is not an element of sV");
  return canonicalize(compose(x.map(), g));
}

namespace {

DyadicMap block_permutation(int s, const std::vector<int>& sigma) {
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < sigma.size(); ++i)
    pieces.push_back(Piece{whole_block(s, static_cast<int>(i) + 1), whole_block(s, sigma[i])});
  const int n = static_cast<int>(sigma.size());
  return DyadicMap::assume_valid(s, n, n, std::move(pieces));
}

}  // namespace

std::vector<DyadicMap> stabilizer(const PVertex& x, const Guards& guards) {
  const int n = x.t();
  if (n > guards.max_stabilizer_n)
    throw GuardExceeded("stabilizer: t(x) = " + std::to_string(n) + " exceeds bound " +
                        std::to_string(guards.max_stabilizer_n));
  const DyadicMap& f = x.map();
  const DyadicMap f_inv = inverse(f);
  auto conjugate = [&](const std::vector<int>& sigma) {
    return reduce(compose(f_inv, compose(block_permutation(x.s(), sigma), f)));
  };

  std::vector<std::vector<int>> perms;
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 1);
  do perms.push_back(sigma);
  while (std::next_permutation(sigma.begin(), sigma.end()));

  std::vector<DyadicMap> group;
  group.reserve(perms.size());
  const DyadicMap id = identity_map(x.s(), 1);
  for (const auto& p : perms) {
    DyadicMap g = conjugate(p);
    if (!same_vertex(act(x, g), x)) throw std::logic_error("stabilizer: element does not fix x");
    const bool is_identity_perm = std::is_sorted(p.begin(), p.end());
    if (equals(g, id) != is_identity_perm) throw std::logic_error("stabilizer: conjugation is not injective");
    group.push_back(std::move(g));
  }

  // sigma -> f^-1 sigma f is a homomorphism: check it on adjacent transpositions.
  for (int a = 0; a + 1 < n; ++a) {
    std::vector<int> tau(n);
    std::iota(tau.begin(), tau.end(), 1);
    std::swap(tau[a], tau[a + 1]);
    const DyadicMap g_tau = conjugate(tau);
    for (std::size_t i = 0; i < perms.size(); ++i) {
      std::vector<int> product(n);
      for (int k = 0; k < n; ++k) product[k] = tau[perms[i][k] - 1];
      const auto j = static_cast<std::size_t>(
          std::find(perms.begin(), perms.end(), product) - perms.begin());
      if (!equals(compose(g_tau, group[i]), group[j])) throw std::logic_error("stabilizer: not closed");
    }
  }
  return group;
}

DyadicMap transporter(const PVertex& x, const PVertex& y) {
  if (x.t() != 1 || y.t() != 1) throw PreconditionError("transporter: both vertices must have t = 1");
  if (x.s() != y.s()) throw InvalidInput("transporter: dimension mismatch");
  DyadicMap g = reduce(compose(inverse(x.map()), y.map()));
  if (!same_vertex(act(x, g), y)) throw std::logic_error("transporter: x.g != y");
  return g;
}

PVertex directedness_check(const PVertex& x, const PVertex& y, std::size_t max_blocks) {
  if (x.s() != y.s()) throw InvalidInput("directedness_check: dimension mismatch");
  const Covering common = join(strip_labels(x.map().domain()), strip_labels(y.map().domain()));
  if (common.size() > max_blocks)
    throw GuardExceeded("directedness_check: upper bound needs " + std::to_string(common.size()) + " blocks");
  PVertex z = canonicalize(splitting_along(common));
  if (!pv_le(x, z) || !pv_le(y, z)) throw std::logic_error("directedness_check: not an upper bound");
  return z;
}

}  // namespace steinforge
