#include "steinforge/figures.hpp"

namespace steinforge::figures {

namespace {

// Intervals of [0, 1) by address.
constexpr DyadicInterval kAll{0, 0};
constexpr DyadicInterval kLo{1, 0};         // [0, 1/2)
constexpr DyadicInterval kHi{1, 1};         // [1/2, 1)
constexpr DyadicInterval kQ0{2, 0};         // [0, 1/4)
constexpr DyadicInterval kQ1{2, 1};         // [1/4, 1/2)
constexpr DyadicInterval kQ2{2, 2};         // [1/2, 3/4)
constexpr DyadicInterval kQ3{2, 3};         // [3/4, 1)
constexpr DyadicInterval kE4{3, 4};         // [1/2, 5/8)
constexpr DyadicInterval kE5{3, 5};         // [5/8, 3/4)

Brick sq(DyadicInterval x, DyadicInterval y, int block = 1) { return Brick{block, std::nullopt, {x, y}}; }

Covering plane(std::vector<Brick> bricks, int m = 1) { return Covering{2, m, std::move(bricks)}; }

Covering labeled(std::vector<std::pair<int, Brick>> bricks) {
  Covering c{2, 1, {}};
  for (auto& [label, b] : bricks) {
    b.label = label;
    c.bricks.push_back(std::move(b));
  }
  return c;
}

MergingPart part(std::vector<std::pair<int, Brick>> bricks) {
  MergingPart p;
  for (const auto& [label, b] : bricks) p.labels.push_back(label);
  p.covering = labeled(std::move(bricks));
  return p;
}

MergingPart single(int label) { return part({{label, sq(kAll, kAll)}}); }
MergingPart side_by_side(int left, int right) { return part({{left, sq(kLo, kAll)}, {right, sq(kHi, kAll)}}); }

}  // namespace

DyadicMap f1() {
  return DyadicMap(2, 1, 1,
                   {
                       {sq(kLo, kQ3), sq(kLo, kQ2)},
                       {sq(kQ0, kQ2), sq(kLo, kLo)},
                       {sq(kQ1, kQ2), sq(kQ2, kAll)},
                       {sq(kHi, kHi), sq(kLo, kQ3)},
                       {sq(kAll, kLo), sq(kQ3, kAll)},
                   });
}

DyadicMap f2() {
  return DyadicMap(2, 1, 2,
                   {
                       {sq(kLo, kQ3), sq(kLo, kLo, 1)},
                       {sq(kQ0, kQ2), sq(kLo, kAll, 2)},
                       {sq(kQ1, kE5), sq(kQ2, kAll, 1)},
                       {sq(kQ1, kE4), sq(kQ2, kAll, 2)},
                       {sq(kHi, kHi), sq(kLo, kHi, 1)},
                       {sq(kAll, kQ0), sq(kQ3, kAll, 2)},
                       {sq(kAll, kQ1), sq(kQ3, kAll, 1)},
                   });
}

DyadicMap f2_swapped() {
  std::vector<Piece> pieces = f2().pieces();
  for (auto& p : pieces) p.target.block = 3 - p.target.block;
  return DyadicMap(2, 1, 2, std::move(pieces));
}

Covering f1_to_f2() { return labeled({{1, sq(kAll, kHi)}, {2, sq(kAll, kLo)}}); }

Covering core_left() {
  return plane({sq(kLo, kQ2), sq(kLo, kQ3), sq(kHi, kHi), sq(kLo, kLo), sq(kHi, kQ1), sq(kQ2, kQ0), sq(kQ3, kQ0)});
}

Covering core_middle() {
  return plane({sq(kLo, kAll), sq(kHi, kHi), sq(kQ3, kLo), sq(kQ2, kQ0), sq(kQ2, kQ1)});
}

Covering core_right() {
  return plane({sq(kAll, kHi), sq(kAll, kQ1), sq(kQ0, kQ0), sq(kQ1, kQ0), sq(kHi, kQ0)});
}

Covering core_left_expected() { return plane({sq(kLo, kLo), sq(kLo, kHi), sq(kHi, kLo), sq(kHi, kHi)}); }
Covering core_middle_expected() { return plane({sq(kLo, kAll), sq(kHi, kHi), sq(kHi, kLo)}); }
Covering core_right_expected() { return plane({sq(kAll, kLo), sq(kAll, kHi)}); }

Merging ve_example() {
  return Merging(2, 5,
                 {
                     part({{5, sq(kAll, kLo)}, {2, sq(kAll, kHi)}}),
                     single(4),
                     side_by_side(1, 3),
                 });
}

TwoBrickExample two_brick_example() {
  const MergingPart grid = part({{1, sq(kLo, kHi)}, {2, sq(kHi, kHi)}, {3, sq(kLo, kLo)}, {4, sq(kHi, kLo)}});
  TwoBrickExample ex;
  ex.u = Merging(2, 6, {grid, side_by_side(5, 6)});
  ex.v = Merging(2, 6, {side_by_side(1, 2), side_by_side(3, 4), single(5), single(6)});
  ex.v0 = Merging(2, 6, {side_by_side(1, 2), side_by_side(3, 4), side_by_side(5, 6)});
  ex.z_b = Merging(2, 6, {single(1), single(2), single(3), single(4), side_by_side(5, 6)});
  return ex;
}

Covering no_midcut_3d() {
  const std::vector<Brick> big{
      Brick{1, std::nullopt, {kAll, kQ0, kQ0}},
      Brick{1, std::nullopt, {kQ0, kAll, kQ1}},
      Brick{1, std::nullopt, {kHi, kHi, kAll}},
  };
  Covering c{3, 1, big};
  for (std::uint64_t x = 0; x < 4; ++x)
    for (std::uint64_t y = 0; y < 4; ++y)
      for (std::uint64_t z = 0; z < 4; ++z) {
        const Brick cube{1, std::nullopt, {{2, x}, {2, y}, {2, z}}};
        bool covered = false;
        for (const auto& b : big) covered = covered || b.contains(cube);
        if (!covered) c.bricks.push_back(cube);
      }
  c.sort();
  return c;
}

}  // namespace steinforge::figures
