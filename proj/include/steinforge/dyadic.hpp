#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "steinforge/guards.hpp"

namespace steinforge {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact dyadic rational k / 2^l in [0, 1], always in lowest terms
/// (k odd, or k = 0 and l = 0).
class Dyadic {
 public:
  Dyadic() = default;
  Dyadic(BigInt k, int l);

  static Dyadic zero() { return {}; }
  static Dyadic one() { return Dyadic(1, 0); }
  /// 2^{-l}
  static Dyadic inverse_power(int l) { return Dyadic(1, l); }

  const BigInt& numerator() const { return k_; }
  int exponent() const { return l_; }
  Rational value() const;
  std::string str() const;

  friend Dyadic operator+(const Dyadic& a, const Dyadic& b);
  /// Requires a >= b.
  friend Dyadic operator-(const Dyadic& a, const Dyadic& b);
  friend bool operator==(const Dyadic&, const Dyadic&) = default;
  friend std::strong_ordering operator<=>(const Dyadic& a, const Dyadic& b);

 private:
  BigInt k_ = 0;
  int l_ = 0;
};

/// Half-open dyadic interval [k / 2^l, (k + 1) / 2^l) with 0 <= k < 2^l.
///
/// The interval is identified with its binary address: the l low bits of k,
/// most significant first.  Two dyadic intervals are either nested or
/// disjoint.
struct DyadicInterval {
  int l = 0;
  std::uint64_t k = 0;

  static DyadicInterval unit() { return {}; }

  bool valid() const;
  bool contains(const DyadicInterval& other) const {
    return l <= other.l && (other.k >> (other.l - l)) == k;
  }
  bool intersects(const DyadicInterval& other) const {
    return contains(other) || other.contains(*this);
  }
  std::optional<DyadicInterval> intersect(const DyadicInterval& other) const;
  /// Enclosing interval at a coarser level (level <= l).
  DyadicInterval ancestor(int level) const { return {level, k >> (l - level)}; }
  /// bit 0 = lower half, bit 1 = upper half.
  DyadicInterval child(int bit) const { return {l + 1, (k << 1) | std::uint64_t(bit & 1)}; }
  DyadicInterval sibling() const { return {l, k ^ 1u}; }
  bool is_upper_half() const { return (k & 1u) != 0; }
  Rational lower() const;
  bool contains_point(const Rational& x) const;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;
  /// Address order: lexicographic on binary addresses, prefixes first.
  friend std::strong_ordering operator<=>(const DyadicInterval& a, const DyadicInterval& b);
};

/// Product of s dyadic intervals inside one block of I^s(m).
struct Brick {
  int block = 1;
  std::optional<int> label;
  std::vector<DyadicInterval> edges;

  int dim() const { return static_cast<int>(edges.size()); }
  int level_sum() const;
  Dyadic volume() const { return Dyadic::inverse_power(level_sum()); }
  /// Every edge has length at least 1/2.
  bool elementary() const;
  /// Elementary with volume at least 1/2.
  bool very_elementary() const { return level_sum() <= 1; }

  bool contains(const Brick& other) const;
  bool intersects(const Brick& other) const;
  std::optional<Brick> intersect(const Brick& other) const;
  bool same_region(const Brick& other) const {
    return block == other.block && edges == other.edges;
  }
  bool contains_point(int point_block, std::span<const Rational> x) const;
};

/// Canonical order on regions: block, then per-dimension interval addresses.
std::strong_ordering compare_region(const Brick& a, const Brick& b);
/// Canonical brick order (region, then label).
bool canonical_less(const Brick& a, const Brick& b);
bool operator==(const Brick& a, const Brick& b);

/// Finite set of bricks tiling I^s(m).
struct Covering {
  int s = 1;
  int m = 1;
  std::vector<Brick> bricks;

  std::size_t size() const { return bricks.size(); }
  bool labeled() const { return !bricks.empty() && bricks.front().label.has_value(); }
  /// Sort bricks into canonical order (in place).
  void sort();
  /// Bricks of one block, canonical order preserved.
  std::vector<Brick> block_bricks(int block) const;
};

/// Equality of canonical forms (bricks compared as a set, labels included).
bool operator==(const Covering& a, const Covering& b);

Covering canonical(Covering c);
Covering strip_labels(Covering c);
std::string to_string(const Brick& b);
std::string to_string(const Covering& c);

/// The trivial covering T_m: one brick per block.
Covering trivial_covering(int s, int m);
/// The maximal elementary covering E: every edge of every brick halved once.
Covering maximal_elementary(int s, int m);

struct CoveringVerdict {
  bool valid = true;
  std::string reason;
  std::optional<std::pair<std::size_t, std::size_t>> overlap;  // indices into bricks
  std::optional<int> missing_block;
  std::optional<int> deficit_block;
  std::optional<Dyadic> deficit;  // 1 - covered volume of deficit_block

  explicit operator bool() const { return valid; }
};

CoveringVerdict validate_covering(const Covering& c);
/// Throws InvalidInput with the verdict's reason if c is invalid.
void require_valid(const Covering& c);

/// Every brick of u lies inside a brick of v (same block).
bool refines(const Covering& u, const Covering& v);

/// Coarsest common refinement: all nonempty intersections of a u-brick with
/// a v-brick.  Labels are dropped.
Covering join(const Covering& u, const Covering& v);

struct JoinPiece {
  Brick brick;
  std::size_t from_u;
  std::size_t from_v;
};
/// join() keeping, for every piece, the indices of the bricks it came from.
std::vector<JoinPiece> join_pieces(const Covering& u, const Covering& v);

/// Finest common coarsening, computed as the overlap-component /
/// bounding-brick fixpoint.
Covering meet(const Covering& u, const Covering& v);

/// Every covering W with refines(u, W), canonical order.
std::vector<Covering> enumerate_coarsenings(const Covering& u, const Guards& guards = default_guards());

struct CoveringClass {
  bool elementary = false;
  bool very_elementary = false;
  std::vector<Dyadic> volumes;  // canonical brick order
};
/// Elementary iff the maximal elementary covering refines c; the edge-length
/// criterion is cross-checked and a disagreement throws std::logic_error.
CoveringClass classify(const Covering& c);

/// Elementary coverings of a single block, optionally restricted to n bricks
/// and decorated with all n! labelings.
std::vector<Covering> enumerate_elementary(int s, bool labeled, std::optional<int> n = std::nullopt,
                                           const Guards& guards = default_guards());

/// Smallest brick containing every input brick (all in one block).
Brick bounding_brick(std::span<const Brick> bricks);

/// Image of sub (a sub-brick of from) under the product of positive-slope
/// affine maps carrying from onto to.  Block and label are taken from `to`.
Brick transfer(const Brick& sub, const Brick& from, const Brick& to, const Guards& guards = default_guards());

/// Bisect brick b along dimension d.
std::pair<Brick, Brick> bisect(const Brick& b, int d);

}  // namespace steinforge
