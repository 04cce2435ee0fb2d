#pragma once

#include <cstddef>

namespace steinforge {

/// Size bounds for exhaustive enumerations and exact arithmetic.
///
/// The defaults keep every verification suite at desk scale.  Setting the
/// environment variable STEINFORGE_GUARD_OVERRIDE to a non-empty value other
/// than "0" switches default_guards() to raised_guards().
struct Guards {
  int max_level = 48;                       // per-edge dyadic exponent
  std::size_t max_coarsening_bricks = 12;   // enumerate_coarsenings input
  int max_exhaustive_s = 3;                 // enumerate_elementary
  int max_stabilizer_n = 6;
  std::size_t max_interval_bricks = 10;     // witness covering of [x, z]
  int max_n_s1 = 8;                         // merging posets, s = 1
  int max_n_s2 = 6;                         // s = 2
  int max_n_s3 = 5;                         // s = 3
  std::size_t max_simplices = 20'000'000;
  std::size_t max_matching_vertices = 4096;

  /// Largest n accepted by the merging-poset enumeration for dimension s
  /// (0 when s itself is out of range).
  int max_merging_n(int s) const;
};

Guards raised_guards();
const Guards& default_guards();

}  // namespace steinforge
