#include "steinforge/guards.hpp"

#include <cstdlib>
#include <string_view>

namespace steinforge {

int Guards::max_merging_n(int s) const {
  switch (s) {
    case 1: return max_n_s1;
    case 2: return max_n_s2;
    case 3: return max_n_s3;
    default: return 0;
  }
}

Guards raised_guards() {
  Guards g;
  g.max_level = 62;
  g.max_coarsening_bricks = 16;
  g.max_exhaustive_s = 4;
  g.max_stabilizer_n = 8;
  g.max_interval_bricks = 14;
  g.max_n_s1 = 10;
  g.max_n_s2 = 7;
  g.max_n_s3 = 6;
  g.max_simplices = 200'000'000;
  g.max_matching_vertices = 1u << 16;
  return g;
}

const Guards& default_guards() {
  static const Guards guards = [] {
    const char* env = std::getenv("STEINFORGE_GUARD_OVERRIDE");
    if (env != nullptr && *env != '\0' && std::string_view(env) != "0") return raised_guards();
    return Guards{};
  }();
  return guards;
}

}  // namespace steinforge
