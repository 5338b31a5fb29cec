#pragma once

#include <cstdint>

#include "pfaffcheck/rational.hpp"

namespace pfaffcheck {

/// SplitMix64. Bounded integers use rejection sampling so every platform
/// draws the same sequence for the same seed.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do r = next();
    while (r >= limit);
    return r % bound;
  }

  /// Uniform in [lo, hi].
  long range(long lo, long hi) {
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  /// Uniform in [lo, hi] \ {0}.
  long nonzero(long lo, long hi) {
    long v;
    do v = range(lo, hi);
    while (v == 0);
    return v;
  }

  Rational rational(long lo, long hi) { return Rational(range(lo, hi)); }

 private:
  std::uint64_t state_;
};

/// Independent stream for trial `index` of a run seeded with `seed`.
inline SplitMix64 derive_stream(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL * (index + 1)));
  return SplitMix64(mix.next());
}

}  // namespace pfaffcheck
