#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "steinforge/dyadic.hpp"
#include "steinforge/guards.hpp"

namespace steinforge {

/// Finite poset on elements 0..size()-1 with the strict order stored as a
/// transitively closed relation.
class FinitePoset {
 public:
  FinitePoset() = default;
  /// `above[i]` lists elements strictly above i.  The relation is closed
  /// transitively, then checked to be irreflexive and antisymmetric.
  explicit FinitePoset(std::vector<std::vector<std::size_t>> above);
  /// Build from a strict-order oracle evaluated on all ordered pairs.
  static FinitePoset from_oracle(std::size_t n, const std::function<bool(std::size_t, std::size_t)>& less);

  std::size_t size() const { return above_.size(); }
  bool less(std::size_t a, std::size_t b) const;
  bool leq(std::size_t a, std::size_t b) const { return a == b || less(a, b); }
  bool comparable(std::size_t a, std::size_t b) const { return leq(a, b) || leq(b, a); }
  /// Sorted.
  const std::vector<std::size_t>& above(std::size_t a) const { return above_[a]; }
  const std::vector<std::size_t>& below(std::size_t a) const { return below_[a]; }
  std::size_t relation_size() const;

  /// Subposet on `keep` (element i of the result is keep[i]).
  FinitePoset induced(std::span<const std::size_t> keep) const;
  /// The same elements with the order reversed.
  FinitePoset opposite() const;

 private:
  std::vector<std::vector<std::size_t>> above_;
  std::vector<std::vector<std::size_t>> below_;
};

/// Sorted vertex ids.
using Simplex = std::vector<int>;

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept;
};

/// Finite abstract simplicial complex storing every simplex explicitly.
///
/// If built with a dimension cap, simplices above the cap are dropped and
/// truncated() reports the cap; homology is then only meaningful below it.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  explicit SimplicialComplex(std::optional<int> max_dim) : cap_(max_dim) {}

  /// Add a simplex together with all of its faces (vertex ids need not be
  /// sorted; duplicates are rejected).
  void add(Simplex s);
  /// Add a simplex whose faces are already present.  Used by generators that
  /// emit simplices in order of increasing dimension.
  void add_closed(Simplex s);

  bool empty() const { return by_dim_.empty() || by_dim_[0].empty(); }
  int dim() const { return static_cast<int>(by_dim_.size()) - 1; }
  std::size_t count(int d) const;
  std::size_t total() const;
  const std::vector<Simplex>& simplices(int d) const;
  bool contains(const Simplex& s) const;
  /// Position of s within simplices(s.size() - 1), if present.
  std::optional<std::size_t> index_of(const Simplex& s) const;
  std::vector<int> vertices() const;
  std::optional<int> truncated() const { return cap_; }
  /// Drop simplices above `max_dim`.
  SimplicialComplex skeleton(int max_dim) const;
  /// Full subcomplex spanned by a vertex set.
  SimplicialComplex induced(std::span<const int> vertex_set) const;
  /// Every simplex of this complex lies in `other`.
  bool subcomplex_of(const SimplicialComplex& other) const;
  /// Same simplex sets.
  bool same_simplices(const SimplicialComplex& other) const;
  /// Relabel vertices through `f` (must be injective on vertices()).
  SimplicialComplex relabel(const std::function<int(int)>& f) const;
  /// Checks face closure and sortedness.
  bool well_formed() const;

 private:
  std::optional<int> cap_;
  std::vector<std::vector<Simplex>> by_dim_;
  std::vector<std::unordered_map<Simplex, std::size_t, SimplexHash>> index_;
};

/// Simplices are chains of `p`; vertex ids are element indices.
SimplicialComplex order_complex(const FinitePoset& p, std::optional<int> max_dim = std::nullopt,
                                const Guards& guards = default_guards());

/// Simplices sigma u tau; vertex sets must be disjoint.
SimplicialComplex join_complex(const SimplicialComplex& k, const SimplicialComplex& l);

using IntMatrix = std::vector<std::vector<BigInt>>;

struct SmithResult {
  std::vector<BigInt> invariants;  // nonzero diagonal entries, d1 | d2 | ...
  IntMatrix u;                     // unimodular, rows x rows
  IntMatrix v;                     // unimodular, cols x cols
  IntMatrix d;                     // u * m * v
};

/// Dense Smith normal form with unimodular certificates.
SmithResult smith_normal_form(const IntMatrix& m);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
/// |det| = 1, checked by exact fraction-free elimination.
bool unimodular(const IntMatrix& m);

/// Sparse integer matrix in coordinate form.
struct SparseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  struct Entry {
    std::size_t row;
    std::size_t col;
    std::int64_t value;
  };
  std::vector<Entry> entries;
};

/// Nonzero Smith invariants (sorted, divisibility chain) of a sparse matrix.
std::vector<BigInt> smith_invariants(const SparseMatrix& m);

/// Boundary matrix d_k : C_k -> C_{k-1} (k >= 1) of a complex, columns indexed
/// by simplices(k), rows by simplices(k-1).  With `reduced` and k = 0 this is
/// the augmentation C_0 -> Z.
SparseMatrix boundary_matrix(const SimplicialComplex& k, int dim, bool reduced = false);

struct HomologyGroup {
  int dim = 0;
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // invariants > 1

  bool trivial() const { return betti == 0 && torsion.empty(); }
  std::string str() const;
};

struct HomologyReport {
  bool reduced = true;
  bool empty = false;          // reduced homology of the empty complex is Z in degree -1
  std::size_t components = 0;  // from union-find on the 1-skeleton
  int valid_through = -1;      // groups above this degree were not computed reliably
  std::vector<HomologyGroup> groups;  // degrees 0..valid_through

  const HomologyGroup* at(int dim) const;
  /// Largest k <= valid_through with all reduced groups through k trivial,
  /// starting the scan at degree 0; -1 if H~_0 is nontrivial; -2 if empty.
  int connectivity() const;
};

/// Integer homology through degree `through` (default: everything computable).
/// H~_0 is cross-checked against the number of connected components.
HomologyReport homology(const SimplicialComplex& k, bool reduced = true, std::optional<int> through = std::nullopt);

/// Homology of the pair (K, L); L must be a subcomplex of K.
HomologyReport relative_homology(const SimplicialComplex& k, const SimplicialComplex& l,
                                 std::optional<int> through = std::nullopt);

/// Chain-level check: d_{k} d_{k+1} = 0 for all k.
bool boundary_squares_to_zero(const SimplicialComplex& k);

struct ConnectivityVerdict {
  int k = 0;
  bool pass = false;
  bool nonempty = false;
  bool connected = false;
  int failing_degree = -2;  // first degree with nontrivial H~ (when it fails there)
  std::string reason;
  /// Two vertices in different components, or a cycle with rational
  /// coefficients that is not a boundary (vertex-id simplices).
  std::vector<std::pair<Simplex, Rational>> cycle;
  std::vector<int> separated;
  HomologyReport report;
};

/// Homologically k-connected: nonempty, connected, H~_i = 0 for i <= k.
/// (Homotopy groups are not decided.)
ConnectivityVerdict connectivity_report(const SimplicialComplex& k, int conn);

struct ContractionVerdict {
  bool valid = false;
  std::string reason;
};

/// Conical contraction: g_0 = id, g_1..g_r = maps, g_r constant at target,
/// each g_i monotone and g_{i+1} pointwise comparable to g_i in one direction.
ContractionVerdict contraction_certificate(const FinitePoset& p, std::span<const std::vector<std::size_t>> maps,
                                           std::size_t target);

}  // namespace steinforge
