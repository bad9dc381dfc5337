#pragma once

#include <cstdint>

namespace cliff {

// splitmix64: tiny seeded generator with portable, reproducible output.
struct SplitMix64 {
  std::uint64_t state;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }  // [0, 1)
  double symmetric(double scale) { return scale * (2.0 * uniform01() - 1.0); }
};

}  // namespace cliff
