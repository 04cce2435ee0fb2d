#pragma once

#include <optional>
#include <span>
#include <vector>

#include "steinforge/dyadic.hpp"

namespace steinforge {

/// One matched pair of a dyadic map: `source` is carried onto `target` by the
/// unique product of positive-slope affine maps.  Labels are ignored.
struct Piece {
  Brick source;
  Brick target;
};

/// A dyadic map I^s(m) -> I^s(n), presented by a compatible pair of
/// coverings and the bijection between their bricks.
///
/// Presentations are not unique: refining the domain along any covering and
/// pushing the refinement forward gives the same map.  Use equals() to
/// compare maps.
class DyadicMap {
 public:
  DyadicMap() = default;
  /// Validates that sources tile I^s(m) and targets tile I^s(n).
  DyadicMap(int s, int m, int n, std::vector<Piece> pieces);
  /// Skips validation; callers guarantee that sources and targets tile.
  static DyadicMap assume_valid(int s, int m, int n, std::vector<Piece> pieces);

  int s() const { return s_; }
  int m() const { return m_; }
  int n() const { return n_; }
  const std::vector<Piece>& pieces() const { return pieces_; }

  /// Domain covering; brick i carries label i + 1.
  Covering domain() const;
  /// Codomain covering; the target of piece i carries label i + 1.
  Covering codomain() const;

 private:
  int s_ = 1;
  int m_ = 1;
  int n_ = 1;
  std::vector<Piece> pieces_;
};

/// Build a map from two labeled coverings and (domain label, codomain label)
/// pairs.
DyadicMap map_from_pairing(const Covering& domain, const Covering& codomain,
                           std::span<const std::pair<int, int>> pairs);

DyadicMap identity_map(int s, int m);

/// The splitting I^s(m) -> I^s(|u|) sending the i-th brick of u (canonical
/// order, or brick label when u is labeled) onto block i.
DyadicMap splitting_along(const Covering& u);

/// A point of I^s(m): a block and exact coordinates in [0, 1)^s.
struct Point {
  int block = 1;
  std::vector<Rational> x;

  friend bool operator==(const Point&, const Point&) = default;
};

Point evaluate(const DyadicMap& f, const Point& p);

/// g o f (apply f first).
DyadicMap compose(const DyadicMap& g, const DyadicMap& f);
DyadicMap inverse(const DyadicMap& f);
/// Same underlying map (decided on the common refinement of the domains).
bool equals(const DyadicMap& f, const DyadicMap& g);
/// Re-present f on a finer domain covering.
DyadicMap refine_domain(const DyadicMap& f, const Covering& finer);
/// Greedily merge sibling pieces whose targets are siblings in the same
/// direction.  Same map, usually fewer pieces; not a normal form.
DyadicMap reduce(const DyadicMap& f);

/// Covering U of I^s(m) such that f is compatible with (U, T_n): the brick
/// of U labeled j is the preimage of block j.  Empty if f is not a splitting.
std::optional<Covering> splitting_covering(const DyadicMap& f);

struct ArrowClass {
  bool splitting = false;
  bool merging = false;
  bool nontrivial = false;       // n > m for splittings, n < m for mergings
  bool elementary = false;       // along an elementary covering
  bool very_elementary = false;  // along a very elementary covering
  std::optional<Covering> along;
};
ArrowClass classify_arrow(const DyadicMap& f);

/// Vertex of P_1: a dyadic map out of one block, up to permuting the blocks
/// of its codomain.  The stored representative orders codomain blocks by the
/// preimage of each block's centre, which does not depend on the
/// presentation.
class PVertex {
 public:
  PVertex() = default;
  int t() const { return map_.n(); }
  int s() const { return map_.s(); }
  const DyadicMap& map() const { return map_; }

  friend PVertex canonicalize(const DyadicMap& f);

 private:
  explicit PVertex(DyadicMap f) : map_(std::move(f)) {}
  DyadicMap map_;
};

/// Reorder codomain blocks canonically, then reduce.  Requires m = 1.
PVertex canonicalize(const DyadicMap& f);
bool same_vertex(const PVertex& x, const PVertex& y);

/// Witness for x <= y: y = z o x with z a splitting along `along`, a
/// covering of I^s(t(x)) whose brick labeled j is sent onto block j of y.
struct LeWitness {
  DyadicMap z;
  Covering along;
};

std::optional<LeWitness> pv_le(const PVertex& x, const PVertex& y);
bool pv_lt(const PVertex& x, const PVertex& y);
/// x <= y along an elementary covering.
bool pv_elem_le(const PVertex& x, const PVertex& y);
/// x <= y along a very elementary covering.
bool pv_velem_le(const PVertex& x, const PVertex& y);

/// x split along a covering of I^s(t(x)).
PVertex split_vertex(const PVertex& x, const Covering& along);

/// The elementary core of y with respect to x: x split along the meet of the
/// maximal elementary covering with the witness covering of x <= y.
PVertex elementary_core(const PVertex& x, const PVertex& y);

/// Right action x.g = x o g of g in sV.
PVertex act(const PVertex& x, const DyadicMap& g);

/// All g in sV with x.g = x (they are f^-1 o sigma o f for block
/// permutations sigma).  Checks that each fixes x and that the set is a
/// group of order t(x)!.
std::vector<DyadicMap> stabilizer(const PVertex& x, const Guards& guards = default_guards());

/// g in sV with x.g = y, for level-one vertices.
DyadicMap transporter(const PVertex& x, const PVertex& y);

/// A common upper bound of x and y, verified with pv_le.
PVertex directedness_check(const PVertex& x, const PVertex& y, std::size_t max_blocks = 4096);

}  // namespace steinforge
