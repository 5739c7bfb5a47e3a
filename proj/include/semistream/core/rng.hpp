#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace semistream {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

/// Child seed for a named subroutine:
///   child = splitmix64(parent ^ splitmix64(fnv1a64(tag) + index))
/// Every random choice in the library flows from one run seed through
/// this function, so equal (config, seed) pairs replay bit-exactly.
inline constexpr std::uint64_t derive_seed(std::uint64_t parent, std::string_view tag,
                                           std::uint64_t index = 0) {
  return splitmix64(parent ^ splitmix64(fnv1a64(tag) + index));
}

using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index = 0) {
  return Rng(derive_seed(seed, tag, index));
}

/// Uniform double in [0, 1) from the top 53 bits; avoids the
/// implementation-defined std::uniform_real_distribution so runs match
/// across standard libraries.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [lo, hi], unbiased via rejection.
inline std::uint64_t uniform_int(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  const std::uint64_t span = hi - lo;
  if (span == ~0ULL) return rng();
  const std::uint64_t range = span + 1;
  const std::uint64_t limit = ~0ULL - (~0ULL % range);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + x % range;
}

inline bool bernoulli(Rng& rng, double p) { return uniform01(rng) < p; }

template <class RandomIt>
void shuffle_range(RandomIt first, RandomIt last, Rng& rng) {
  const auto n = static_cast<std::uint64_t>(last - first);
  for (std::uint64_t i = n; i > 1; --i) {
    const auto j = uniform_int(rng, 0, i - 1);
    using std::swap;
    swap(first[i - 1], first[j]);
  }
}

}  // namespace semistream
