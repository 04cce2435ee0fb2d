#include "steinforge/random.hpp"

#include <algorithm>
#include <array>
#include <numeric>

#include "steinforge/error.hpp"

namespace steinforge::gen {

Rng trial_rng(std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32), 0x5eedu};
  return Rng(seq);
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Covering random_bisection(Rng& rng, int s, int m, std::size_t bricks) {
  if (bricks < static_cast<std::size_t>(m)) throw InvalidInput("random_bisection: fewer bricks than blocks");
  Covering c = trivial_covering(s, m);
  while (c.size() < bricks) {
    const auto i = static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(c.size()) - 1));
    const int d = uniform(rng, 0, s - 1);
    auto [lo, hi] = bisect(c.bricks[i], d);
    c.bricks[i] = std::move(lo);
    c.bricks.push_back(std::move(hi));
  }
  c.sort();
  return c;
}

Covering random_covering(Rng& rng, int s, int m, std::size_t fine, std::size_t max_bricks, std::size_t min_bricks) {
  const Covering base = random_bisection(rng, s, m, fine);
  std::vector<Covering> options;
  for (auto& c : enumerate_coarsenings(base))
    if (c.size() <= max_bricks && c.size() >= min_bricks) options.push_back(std::move(c));
  if (options.empty()) throw InvalidInput("random_covering: no coarsening within the brick bounds");
  return options[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(options.size()) - 1))];
}

DyadicMap random_map(Rng& rng, int s, int m, int n, std::size_t bricks) {
  const Covering domain = random_bisection(rng, s, m, bricks);
  const Covering codomain = random_bisection(rng, s, n, bricks);
  std::vector<std::size_t> perm(bricks);
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < bricks; ++i) pieces.push_back(Piece{domain.bricks[i], codomain.bricks[perm[i]]});
  return DyadicMap(s, m, n, std::move(pieces));
}

PVertex random_vertex(Rng& rng, int s, int t, std::size_t group_bricks) {
  const DyadicMap g = random_map(rng, s, 1, 1, static_cast<std::size_t>(uniform(rng, 1, static_cast<int>(group_bricks))));
  const Covering u = random_bisection(rng, s, 1, static_cast<std::size_t>(t));
  return canonicalize(compose(splitting_along(u), g));
}

Point random_point(Rng& rng, int s, int m) {
  static constexpr std::array<int, 6> kDenominators{3, 5, 7, 12, 64, 1000};
  Point p;
  p.block = uniform(rng, 1, m);
  for (int d = 0; d < s; ++d) {
    const int q = kDenominators[static_cast<std::size_t>(uniform(rng, 0, kDenominators.size() - 1))];
    p.x.emplace_back(uniform(rng, 0, q - 1), q);
  }
  return p;
}

}  // namespace steinforge::gen
