#pragma once

#include <compare>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "steinforge/complexes.hpp"
#include "steinforge/groupsv.hpp"

namespace steinforge {

/// One block of a merging: the labels merged into it and the elementary
/// covering of the block whose brick labeled j receives brick j.
struct MergingPart {
  std::vector<int> labels;  // sorted
  Covering covering;        // one block, bricks labeled by `labels`
};

/// Element of E_n: a partition of the labels 1..n into parts, each with an
/// elementary covering of one block by its labeled bricks.  Parts are sorted
/// by smallest label and coverings are canonical.
class Merging {
 public:
  Merging() = default;
  /// Validates and canonicalizes.  `nontrivial` demands a part with at least
  /// two labels.
  Merging(int s, int n, std::vector<MergingPart> parts, bool nontrivial = true);

  int s() const { return s_; }
  int n() const { return n_; }
  const std::vector<MergingPart>& parts() const { return parts_; }
  /// Number of blocks after merging.
  int blocks() const { return static_cast<int>(parts_.size()); }
  bool very_elementary() const;
  /// Index of the part containing a label.
  std::size_t part_of(int label) const;
  /// Stable serialization used for lookups.
  const std::string& key() const { return key_; }

  friend bool operator==(const Merging& a, const Merging& b) { return a.key_ == b.key_; }

 private:
  int s_ = 1;
  int n_ = 0;
  std::vector<MergingPart> parts_;
  std::string key_;
};

/// Further splitting: b is obtained from a by splitting blocks of a along a
/// dyadic covering and rescaling (a <= b; more blocks is higher).
bool merging_le(const Merging& a, const Merging& b);

/// The map I^s(n) -> I^s(blocks) sending block j onto the brick labeled j.
DyadicMap merging_map(const Merging& u);

/// h = (c, b) with c = (c_s, ..., c_2), compared lexicographically.
struct Height {
  std::vector<int> c;
  int b = 0;

  friend auto operator<=>(const Height&, const Height&) = default;
  std::string str() const;
};
Height height(const Merging& u);

/// E_n (or VE_n) with its order.
struct MergingPoset {
  int s = 1;
  int n = 0;
  bool very = false;
  std::vector<Merging> elements;  // canonical order: by block count, then key
  FinitePoset order;
  std::vector<Height> heights;
  std::unordered_map<std::string, std::size_t> index;

  std::optional<std::size_t> find(const Merging& u) const;
  std::size_t size() const { return elements.size(); }
};

/// All non-trivial (very) elementary mergings of n labeled bricks, ordered by
/// generating every further splitting of every element.
MergingPoset enumerate_posets(int s, int n, bool very, const Guards& guards = default_guards());

/// Order complex of a merging poset (vertex ids are element indices).
SimplicialComplex merging_complex(const MergingPoset& e, std::optional<int> max_dim = std::nullopt);

// ------------------------------------------------------------ VE_n ~ M°(sK_n)

struct VeIsoReport {
  std::size_t elements = 0;
  std::size_t faces = 0;                 // simplices of M°(sK_n)
  std::size_t single_pair = 0;           // elements with exactly one merged pair
  std::size_t expected_single_pair = 0;  // s * n * (n - 1)
  bool bijective = false;
  bool order_reversing = false;          // a <= b iff image(a) contains image(b)
  bool merging_le_agrees = false;        // pairwise check of the generated order
  bool merging_le_checked = false;
  bool realization_isomorphic = false;   // order complexes agree after relabeling
  std::vector<Simplex> images;           // per element, ids into orient(make_sKn(s, n))
  bool pass() const {
    return bijective && order_reversing && realization_isomorphic && single_pair == expected_single_pair &&
           (!merging_le_checked || merging_le_agrees);
  }
};

/// Oriented coloured edge i -> j of colour k for each two-brick part split
/// in direction k with i on the low side.
Simplex ve_image(const Merging& u);
VeIsoReport ve_iso(int s, int n, const Guards& guards = default_guards());

// ---------------------------------------------------------- descending links

struct DescendingLink {
  std::vector<std::size_t> down;  // v < u with c(v) = c(u)
  std::vector<std::size_t> up;    // v > u with c(v) < c(u)
  SimplicialComplex down_complex;
  SimplicialComplex up_complex;
  SimplicialComplex dlk;          // full subcomplex on down + up
  bool matches_height = false;    // down + up = {v comparable to u : h(v) < h(u)}
  bool cross_comparable = false;  // every down vertex is below every up vertex
  bool join_identity = false;     // dlk = down * up
};

DescendingLink descending_link(const MergingPoset& e, std::size_t u, std::optional<int> max_dim = std::nullopt);

/// Indices of u's parts with exactly two labels.
std::vector<std::size_t> two_brick_parts(const Merging& u);

struct TwoBricksVerdict {
  std::size_t part = 0;  // index of B among u's parts
  std::size_t uplink_size = 0;
  bool v0_in_uplink = false;
  bool v0_le_zb = false;
  bool zb_in_uplink = false;
  ContractionVerdict certificate;
  HomologyReport uplink_homology;
  bool pass() const {
    return v0_in_uplink && v0_le_zb && zb_in_uplink && certificate.valid && uplink_homology.connectivity() >= uplink_homology.valid_through;
  }
};

/// One verdict per two-brick part B of u: the up-link is contracted by
/// V >= V_0 <= Z_B.  Requires u outside VE_n with a two-brick part.
std::vector<TwoBricksVerdict> two_bricks_certificate(const MergingPoset& e, std::size_t u);

/// Explicit V_0 and Z_B for a part index of u and an element v >= u.
Merging redo_except(const Merging& u, std::size_t part, const Merging& v);
Merging maximal_split_except(const Merging& u, std::size_t part);

struct NoTwoBricksVerdict {
  int k_b = 0;
  int k_s = 0;
  int bound = 0;             // k_b + nu(k_s) - 1
  int required_bound = 0;    // eta(n) - 2
  bool brick_count = false;  // n <= 2^s k_b + k_s
  bool downlink_size = false;  // |down| = |VE_{k_s}|
  ConnectivityVerdict connectivity;  // dlk at eta(n) - 2
  ConnectivityVerdict intermediate;  // dlk at k_b + nu(k_s) - 1
  ConnectivityVerdict uplink;        // up-link at k_b - 2
  /// The lemma's conclusion and the arithmetic leading to it.
  bool pass() const { return brick_count && downlink_size && connectivity.pass && bound >= required_bound; }
};
/// Requires u outside VE_n with no two-brick part.
NoTwoBricksVerdict no_two_bricks_check(const MergingPoset& e, std::size_t u);

// ----------------------------------------------------------------- intervals

struct IntervalPoset {
  PVertex x;
  PVertex z;
  Covering witness;                // covering of I^s(t(x)) with z = x split along it
  std::vector<Covering> coverings; // coarsenings of the witness
  std::vector<PVertex> vertices;   // x split along each covering
  FinitePoset order;               // i < j iff coverings[j] strictly refines coverings[i]
  std::size_t bottom = 0;          // x
  std::size_t top = 0;             // z
};

/// [x, z] enumerated through the coarsenings of the witness covering.  With
/// `cross_check` the order is compared with pv_le on every pair.
IntervalPoset interval_poset(const PVertex& x, const PVertex& z, bool cross_check = true,
                             const Guards& guards = default_guards());

enum class IntervalKind { closed, open, half_open_lower, half_open_upper };  // [x,z], (x,z), [x,z), (x,z]

/// Element indices of the chosen interval.
std::vector<std::size_t> interval_members(const IntervalPoset& p, IntervalKind kind);
/// Order complex of the chosen interval (vertex ids are indices into
/// p.coverings); with `elementary_only`, chains whose least element is not
/// elementarily below their greatest are dropped.
SimplicialComplex interval_complex(const IntervalPoset& p, IntervalKind kind, bool elementary_only = false);

/// |[x,z)| u |(x,z]| equals the suspension of |(x,z)| with apexes x and z.
bool suspension_identity(const IntervalPoset& p);

struct CubeVerdict {
  std::size_t open_size = 0;
  bool core_in_interval = false;
  bool core_matches_vertex = false;
  ContractionVerdict certificate;
  HomologyReport homology;
  bool pass() const {
    return core_in_interval && core_matches_vertex && certificate.valid && homology.connectivity() >= homology.valid_through;
  }
};
/// Requires x < z but not x elementarily below z.
CubeVerdict cube_lemma_check(const PVertex& x, const PVertex& z, const Guards& guards = default_guards());

// ------------------------------------------------------------------- Morse

struct MorseLevel {
  std::vector<int> height;
  std::size_t vertices = 0;
  int k = -1;               // all descending links at this level are (k-1)-connected
  bool relative_vanishes = false;  // H_j(X<=t, X<t) = 0 for j <= k
  bool ranks_match = false;        // rank H_j(pair) = sum of rank H~_{j-1}(dlk)
};

struct MorseVerdict {
  std::vector<MorseLevel> levels;
  bool pass() const;
};

/// Heights are compared lexicographically and must differ on comparable
/// elements.  Checks, level by level, that descending-link connectivity
/// forces the relative homology of the sublevel pair to vanish through k,
/// for k up to k_max.
MorseVerdict morse_pair_check(const FinitePoset& p, const std::vector<std::vector<int>>& heights, int k_max);
std::vector<std::vector<int>> height_keys(const MergingPoset& e);

// ----------------------------------------------------------- ambient link

struct AmbientLink {
  std::vector<PVertex> vertices;  // x merged along each element of E_n
  bool all_elementary_below = false;
  bool isomorphic = false;        // pv_le on vertices agrees with the E_n order
  std::size_t size() const { return vertices.size(); }
};
/// The descending link of x, built from x and compared with E_{t(x)}.
AmbientLink desc_link_of_vertex(const PVertex& x, const Guards& guards = default_guards());

}  // namespace steinforge
