#pragma once

// Counter-based random numbers: draw k of stream s is a pure function of
// (seed, s, k), so parallel jobs never share generator state.

#include <cstdint>

#include "homoclinic/geometry.hpp"

namespace homoclinic {

[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) : key_(splitmix64(seed ^ splitmix64(stream))) {}

  /// Uniform on [0,1) with 53 random bits.
  [[nodiscard]] double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  [[nodiscard]] double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  [[nodiscard]] std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

  [[nodiscard]] std::uint64_t next() { return splitmix64(key_ + counter_++ * 0xD1B54A32D192ED03ULL); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_{0};
};

/// Uniform point in the box [lo,hi]^2.
[[nodiscard]] inline DiskPoint uniform_point(CounterRng& rng, double lo, double hi) {
  const double x = rng.uniform(lo, hi);
  const double y = rng.uniform(lo, hi);
  return {x, y};
}

/// Halton point (bases 2 and 3) mapped to the box [lo,hi]^2.
[[nodiscard]] inline DiskPoint halton_point(std::uint64_t index, double lo, double hi) {
  auto radical = [](std::uint64_t i, std::uint64_t base) {
    double f = 1.0;
    double r = 0.0;
    while (i > 0) {
      f /= static_cast<double>(base);
      r += f * static_cast<double>(i % base);
      i /= base;
    }
    return r;
  };
  return {lo + (hi - lo) * radical(index + 1, 2), lo + (hi - lo) * radical(index + 1, 3)};
}

}  // namespace homoclinic
