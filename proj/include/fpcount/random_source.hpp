#pragma once

#include <cstdint>
#include <algorithm>
#include <bit>
#include <random>
#include <stdexcept>

#include "fpcount/bigint.hpp"

namespace fpcount {

/// Seeded generator with uniform draws over arbitrary-precision ranges.
/// std::mt19937_64's output sequence is fixed by the standard; the bounded
/// draws below use only rejection on raw bits, so a seed reproduces the same
/// stream on every conforming platform.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform in [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("RandomSource::below: empty range");
    if (bound == 1) return 0;
    const int bits = 64 - std::countl_zero(bound - 1);
    const std::uint64_t mask = bits == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    for (;;) {
      const std::uint64_t x = next_u64() & mask;
      if (x < bound) return x;
    }
  }

  /// Uniform in [0, bound), bound > 0.
  BigInt below(const BigInt& bound) {
    if (bound <= 0) throw std::invalid_argument("RandomSource::below: empty range");
    if (bound == 1) return 0;
    const std::uint64_t bits = bit_length(BigInt(bound - 1));
    for (;;) {
      BigInt x = random_bits(bits);
      if (x < bound) return x;
    }
  }

  /// Uniform in [lo, hi].
  BigInt in_range(const BigInt& lo, const BigInt& hi) {
    if (hi < lo) throw std::invalid_argument("RandomSource::in_range: empty range");
    return lo + below(BigInt(hi - lo + 1));
  }

  /// `bits` independent fair bits as a nonnegative integer.
  BigInt random_bits(std::uint64_t bits) {
    BigInt x = 0;
    std::uint64_t filled = 0;
    while (filled < bits) {
      std::uint64_t word = next_u64();
      const std::uint64_t take = std::min<std::uint64_t>(64, bits - filled);
      if (take < 64) word &= (std::uint64_t{1} << take) - 1;
      x |= BigInt(word) << filled;
      filled += take;
    }
    return x;
  }

 private:
  std::mt19937_64 engine_;
};

/// Seed for the i-th independent stream under a master seed (splitmix64 finalizer).
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace fpcount
