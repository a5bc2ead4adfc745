#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

// Seeded draws with pinned algorithms. std::shuffle and the standard
// distributions are implementation-defined, so everything that must be
// reproducible across platforms goes through these helpers instead.

namespace vgkit {

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Unbiased uniform integer in [0, n). n must be > 0.
inline std::uint64_t bounded_index(std::mt19937_64& rng, std::uint64_t n) {
  // rejection sampling over the largest multiple of n
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

/// Fisher-Yates shuffle driven by bounded_index.
template <class T>
void seeded_shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded_index(rng, i));
    using std::swap;
    swap(v[i - 1], v[j]);
  }
}

}  // namespace vgkit
