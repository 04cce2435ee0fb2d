#pragma once

#include "steinforge/dyadic.hpp"
#include "steinforge/groupsv.hpp"
#include "steinforge/steinlocal.hpp"

/// Worked examples in the unit square (s = 2), kept in code so suites can
/// run without fixture files.  tests/fixtures holds the same data as JSON.
namespace steinforge::figures {

/// Two elements of P_1 related by a splitting: f2 = z o f1.
DyadicMap f1();
DyadicMap f2();
/// f2 with its two codomain blocks interchanged.
DyadicMap f2_swapped();
/// The covering z splits along: two horizontal halves, top half labeled 1.
Covering f1_to_f2();

/// Non-elementary coverings of I^2 and the finest elementary coverings
/// they refine.
Covering core_left();
Covering core_middle();
Covering core_right();
Covering core_left_expected();    // four quarters
Covering core_middle_expected();  // left half, right half cut horizontally
Covering core_right_expected();   // two horizontal halves

/// A very elementary merging of five bricks: {2,5} stacked, {1,3} side by
/// side, {4} alone.
Merging ve_example();

/// Six bricks: u merges a 2x2 grid {1,2,3,4} and the side-by-side pair
/// {5,6}; v is a further splitting; v0 and z_b as in the two-brick lemma
/// for the part {5,6}.
struct TwoBrickExample {
  Merging u;
  Merging v;
  Merging v0;
  Merging z_b;
};
TwoBrickExample two_brick_example();

/// A covering of I^3 whose only elementary coarsening is the trivial one,
/// although it is not itself trivial.
Covering no_midcut_3d();

}  // namespace steinforge::figures
