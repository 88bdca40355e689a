#pragma once

#include <cmath>
#include <cstdint>

namespace hetca::sim {

/// splitmix64 finalizer; statistically strong 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline double bits_to_u01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// Counter-based substream keyed by an arbitrary tuple of words.
/// Streams derived from the same master seed but different tuples are
/// independent, so parallel evaluation order does not matter.
struct Stream {
  std::uint64_t key = 0;
  std::uint64_t counter = 0;

  std::uint64_t next_bits() { return mix64(key ^ mix64(counter++)); }
  double next_u01() { return bits_to_u01(next_bits()); }

  /// Uniform integer in [0, n), n >= 1. Rejection keeps it unbiased.
  std::uint32_t next_below(std::uint32_t n) {
    const std::uint64_t bound = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v;
    do {
      v = next_bits();
    } while (v >= bound);
    return static_cast<std::uint32_t>(v % n);
  }

  /// Exact Poisson draw by the product method, chunked so the
  /// exponential never underflows.
  std::uint64_t next_poisson(double mean);
};

inline std::uint64_t derive_key(std::uint64_t seed) { return mix64(seed); }

template <typename... Words>
std::uint64_t derive_key(std::uint64_t seed, std::uint64_t w, Words... rest) {
  return derive_key(mix64(seed ^ mix64(w)), rest...);
}

template <typename... Words>
Stream derive_stream(std::uint64_t seed, Words... words) {
  return Stream{derive_key(seed, static_cast<std::uint64_t>(words)...), 0};
}

/// Random-access unit-mean exponential draw from a key/tuple pair.
template <typename... Words>
double exp1_draw(std::uint64_t key, Words... words) {
  double u = bits_to_u01(derive_key(key, static_cast<std::uint64_t>(words)...));
  // -log(1-u); u < 1 by construction
  return -std::log1p(-u);
}

}  // namespace hetca::sim
