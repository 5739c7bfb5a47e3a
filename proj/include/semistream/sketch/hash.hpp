#pragma once

#include <bit>
#include <cstdint>
#include <vector>

#include "semistream/core/rng.hpp"

namespace semistream {

/// Arithmetic modulo the Mersenne prime 2^61 - 1.
namespace mod61 {

inline constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

inline std::uint64_t reduce(unsigned __int128 x) {
  std::uint64_t lo = static_cast<std::uint64_t>(x & kPrime) + static_cast<std::uint64_t>(x >> 61);
  // x < 2^122 so one more fold suffices.
  lo = (lo & kPrime) + (lo >> 61);
  return lo >= kPrime ? lo - kPrime : lo;
}

inline std::uint64_t mul(std::uint64_t a, std::uint64_t b) {
  return reduce(static_cast<unsigned __int128>(a) * b);
}

inline std::uint64_t add(std::uint64_t a, std::uint64_t b) {
  const std::uint64_t s = a + b;
  return s >= kPrime ? s - kPrime : s;
}

inline std::uint64_t sub(std::uint64_t a, std::uint64_t b) { return a >= b ? a - b : a + kPrime - b; }

inline std::uint64_t pow(std::uint64_t base, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e != 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

/// Signed integer as a field element.
inline std::uint64_t from_signed(std::int64_t v) {
  if (v >= 0) return static_cast<std::uint64_t>(v) % kPrime;
  const std::uint64_t m = static_cast<std::uint64_t>(-(v + 1)) % kPrime;  // |v| - 1, overflow-safe
  return sub(kPrime - 1, m);
}

}  // namespace mod61

/// k-wise independent hash: a random polynomial of degree k-1 over
/// GF(2^61 - 1), evaluated by Horner's rule. Inputs must be < 2^61 - 1.
class PolyHash {
 public:
  PolyHash() = default;
  PolyHash(Rng& rng, unsigned independence) : coef_(independence == 0 ? 1 : independence) {
    for (auto& c : coef_) c = uniform_int(rng, 0, mod61::kPrime - 1);
  }

  [[nodiscard]] std::uint64_t operator()(std::uint64_t x) const {
    std::uint64_t h = 0;
    for (auto it = coef_.rbegin(); it != coef_.rend(); ++it) h = mod61::add(mod61::mul(h, x), *it);
    return h;
  }

  [[nodiscard]] std::size_t independence() const { return coef_.size(); }

 private:
  std::vector<std::uint64_t> coef_;
};

/// Number of trailing zero bits of a 61-bit hash value; a hash of zero
/// counts as the deepest level.
inline unsigned geometric_level(std::uint64_t h, unsigned max_level) {
  if (h == 0) return max_level;
  const auto z = static_cast<unsigned>(std::countr_zero(h));
  return z < max_level ? z : max_level;
}

}  // namespace semistream
