#pragma once

#include <cstdint>
#include <vector>

namespace costsense {

/// SplitMix64 (Steele, Lea & Flood 2014). Counter based: the k-th output is
/// mix(seed + k * 0x9E3779B97F4A7C15), so a (seed, k) pair always yields the
/// same 64-bit value regardless of platform or standard library.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform integer in [0, bound) by rejection; bound must be > 0.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = next();
    } while (r >= limit);
    return r % bound;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (no cached second value).
  double normal();

 private:
  std::uint64_t state_;
};

/// Fisher-Yates shuffle of 0..n-1 driven by SplitMix64(seed): for i from n-1
/// down to 1, swap position i with position below(i + 1).
std::vector<std::size_t> permutation(std::size_t n, std::uint64_t seed);

}  // namespace costsense
