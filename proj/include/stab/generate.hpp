#pragma once

#include <cstdint>
#include <string>

#include "stab/geometry.hpp"

namespace stab {

// Fixed cross-language-reproducible generator (splitmix64). All instance
// families derive their randomness from it, so corpora regenerate
// identically from (family, n, seed, params).
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // uniform in [0, n), n >= 1
  std::int64_t below(std::int64_t n) {
    return static_cast<std::int64_t>(next() % static_cast<std::uint64_t>(n));
  }
  std::int64_t range(std::int64_t lo, std::int64_t hi) {  // inclusive
    return lo + below(hi - lo + 1);
  }
};

enum class Family { uniform, squares, tall, wide, laminar, delta_large };

Family parse_family(const std::string& name);
const char* family_name(Family f);

struct GenParams {
  std::int64_t grid = 32;  // coordinate range scale
  Rat eps{1, 4};
  Rat delta{1, 2};
  // Pins the widest rect to a width dividing (1/eps - 2) * n so that the
  // normalization scale maps the instance onto its grid exactly.
  bool align_max_width = false;
};

struct Generated {
  Instance inst;
  std::string meta;  // json text
};

Generated generate(Family family, int n, std::uint64_t seed,
                   const GenParams& params = {});

}  // namespace stab
