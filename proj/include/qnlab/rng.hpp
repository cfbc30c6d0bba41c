#pragma once

// Counter-based deterministic random streams (splitmix64 finalizer).
// Every draw is a pure function of (seed, counter), so sampling is
// reproducible bit-for-bit regardless of evaluation order or partitioning
// into worker blocks.

#include <cmath>
#include <cstdint>
#include <numbers>

namespace qnlab {

inline std::uint64_t splitmix64(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Uniform draw in [0, 1).
inline double uniform01(std::uint64_t seed, std::uint64_t counter) {
  return static_cast<double>(splitmix64(seed, counter) >> 11) * 0x1.0p-53;
}

/// Standard 2D Gaussian via Box-Muller from counters (c, c+1).
inline void gauss_pair(std::uint64_t seed, std::uint64_t counter, double* g1,
                       double* g2) {
  double u1 = uniform01(seed, counter);
  double u2 = uniform01(seed, counter + 1);
  double r = std::sqrt(-2.0 * std::log1p(-u1));  // log(1-u1), never log(0)
  double th = 2.0 * std::numbers::pi * u2;
  *g1 = r * std::cos(th);
  *g2 = r * std::sin(th);
}

}  // namespace qnlab
