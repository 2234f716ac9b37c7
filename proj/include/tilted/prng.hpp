#pragma once

// Deterministic randomness helpers. std::shuffle and the distribution classes
// are implementation-defined, so seeded runs would not reproduce across
// standard libraries; these draw from the (fully specified) mt19937_64 stream
// directly.

#include <cstdint>
#include <random>
#include <vector>

namespace tilted {

// Uniform draw from [0, bound) by rejection; bound >= 1.
inline std::uint64_t draw_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % bound;
}

template <typename T>
void deterministic_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[draw_below(rng, i)]);
  }
}

// Uniform subset of [n] as a mask.
inline std::uint64_t draw_mask(std::mt19937_64& rng, int n) {
  return rng() & ((n >= 64) ? ~0ull : ((1ull << n) - 1));
}

}  // namespace tilted
