#pragma once

#include <random>
#include <utility>
#include <vector>

#include "steinforge/dyadic.hpp"
#include "steinforge/groupsv.hpp"
#include "steinforge/steinlocal.hpp"

namespace testing {

using namespace steinforge;

inline constexpr DyadicInterval kAll{0, 0};
inline constexpr DyadicInterval kLo{1, 0};  // [0, 1/2)
inline constexpr DyadicInterval kHi{1, 1};  // [1/2, 1)
inline constexpr DyadicInterval kQ0{2, 0};  // [0, 1/4)
inline constexpr DyadicInterval kQ1{2, 1};  // [1/4, 1/2)
inline constexpr DyadicInterval kQ2{2, 2};  // [1/2, 3/4)
inline constexpr DyadicInterval kQ3{2, 3};  // [3/4, 1)

inline Brick box(std::vector<DyadicInterval> edges, int block = 1) { return Brick{block, std::nullopt, std::move(edges)}; }
inline Brick sq(DyadicInterval x, DyadicInterval y, int block = 1) { return box({x, y}, block); }

inline Covering cover(int s, std::vector<Brick> bricks, int m = 1) { return Covering{s, m, std::move(bricks)}; }

inline Covering labeled(int s, std::vector<std::pair<int, Brick>> bricks) {
  Covering c{s, 1, {}};
  for (auto& [label, b] : bricks) {
    b.label = label;
    c.bricks.push_back(std::move(b));
  }
  return c;
}

inline MergingPart part(int s, std::vector<std::pair<int, Brick>> bricks) {
  MergingPart p;
  for (const auto& [label, b] : bricks) p.labels.push_back(label);
  p.covering = labeled(s, std::move(bricks));
  return p;
}

inline Covering vertical_halves() { return cover(2, {sq(kLo, kAll), sq(kHi, kAll)}); }
inline Covering horizontal_halves() { return cover(2, {sq(kAll, kLo), sq(kAll, kHi)}); }
inline Covering quarters() { return cover(2, {sq(kLo, kLo), sq(kLo, kHi), sq(kHi, kLo), sq(kHi, kHi)}); }

/// Independent generator: repeatedly halve a uniformly chosen brick along a
/// uniformly chosen direction, never going below edge length 2^-max_level.
inline Covering bisections(std::mt19937_64& rng, int s, int m, int cuts, int max_level = 3) {
  Covering c = trivial_covering(s, m);
  for (int i = 0; i < cuts; ++i) {
    std::uniform_int_distribution<std::size_t> pick(0, c.bricks.size() - 1);
    std::uniform_int_distribution<int> dir(0, s - 1);
    const std::size_t at = pick(rng);
    const int d = dir(rng);
    if (c.bricks[at].edges[static_cast<std::size_t>(d)].l >= max_level) continue;
    auto [lo, hi] = bisect(c.bricks[at], d);
    c.bricks[at] = lo;
    c.bricks.push_back(hi);
  }
  c.sort();
  return c;
}

/// Independent point generator with small odd and even denominators.
inline Point point_in(std::mt19937_64& rng, int s, int m) {
  static const int denominators[] = {3, 5, 7, 8, 12, 16};
  std::uniform_int_distribution<int> which(0, 5);
  std::uniform_int_distribution<int> block(1, m);
  Point p{block(rng), {}};
  for (int d = 0; d < s; ++d) {
    const int q = denominators[which(rng)];
    std::uniform_int_distribution<int> a(0, q - 1);
    p.x.push_back(Rational(a(rng), q));
  }
  return p;
}

}  // namespace testing
