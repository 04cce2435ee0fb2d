#pragma once

#include <cstdint>
#include <random>

#include "steinforge/dyadic.hpp"
#include "steinforge/groupsv.hpp"

namespace steinforge::gen {

using Rng = std::mt19937_64;

/// Independent stream for one trial of a seeded suite, so results do not
/// depend on how trials are scheduled across threads.
Rng trial_rng(std::uint64_t seed, std::uint64_t trial);

/// Uniform integer in [lo, hi].
int uniform(Rng& rng, int lo, int hi);

/// Covering of I^s(m) with exactly `bricks` bricks, built by repeatedly
/// halving a random brick along a random direction.  Requires bricks >= m.
Covering random_bisection(Rng& rng, int s, int m, std::size_t bricks);

/// A random coarsening of a random bisection covering with `fine` bricks,
/// uniform among those with between `min_bricks` and `max_bricks` bricks.
/// Unlike random_bisection this reaches coverings without a guillotine cut.
Covering random_covering(Rng& rng, int s, int m, std::size_t fine, std::size_t max_bricks, std::size_t min_bricks = 1);

/// Random map I^s(m) -> I^s(n) whose coverings have `bricks` bricks each.
DyadicMap random_map(Rng& rng, int s, int m, int n, std::size_t bricks);

/// Random vertex of P_1 with t blocks, built from a random element of sV
/// followed by a random splitting.
PVertex random_vertex(Rng& rng, int s, int t, std::size_t group_bricks = 4);

/// Point of I^s(m) with coordinates a / q, q drawn from a few odd and even
/// denominators.
Point random_point(Rng& rng, int s, int m);

}  // namespace steinforge::gen
