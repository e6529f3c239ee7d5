#pragma once

#include <cstddef>
#include <cstdint>

#include "prbg/bignum.hpp"

namespace prbg {

/// The canonical splitmix64 stream. Every seeded operation in the library
/// (key generation, system generation, benchmark operands) draws from it, so
/// one 64-bit seed reproduces an experiment bit for bit.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed = 0) noexcept : state_(seed) {}

  std::uint64_t next() noexcept {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t t = state_;
    t = (t ^ (t >> 30)) * 0xBF58476D1CE4E5B9ULL;
    t = (t ^ (t >> 27)) * 0x94D049BB133111EBULL;
    return t ^ (t >> 31);
  }
  std::uint64_t operator()() noexcept { return next(); }

  // Uniform in [0, bound) by rejection; bound > 0.
  std::uint64_t below(std::uint64_t bound) noexcept {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

 private:
  std::uint64_t state_;
};

/// Single bits off a SplitMix64 stream: 64 bits per draw, least significant first.
class BitReader {
 public:
  explicit BitReader(SplitMix64& rng) noexcept : rng_(rng) {}

  bool next_bit() noexcept {
    if (available_ == 0) {
      word_ = rng_.next();
      available_ = 64;
    }
    const bool b = (word_ & 1U) != 0;
    word_ >>= 1;
    --available_;
    return b;
  }

 private:
  SplitMix64& rng_;
  std::uint64_t word_ = 0;
  unsigned available_ = 0;
};

// `bits` random bits, whole words drawn least-significant limb first, the
// top word masked.
inline Natural random_natural(SplitMix64& rng, std::size_t bits) {
  std::vector<Limb> limbs((bits + kLimbBits - 1) / kLimbBits);
  for (auto& l : limbs) l = rng.next();
  if (bits % kLimbBits != 0 && !limbs.empty()) limbs.back() &= (Limb{1} << (bits % kLimbBits)) - 1;
  return Natural::from_limbs(std::move(limbs));
}

// Exactly `bits` bits long (top bit forced).
inline Natural random_exact_bits(SplitMix64& rng, std::size_t bits) {
  if (bits == 0) return {};
  return add(low_bits(random_natural(rng, bits), bits - 1), Natural::power_of_two(bits - 1));
}

}  // namespace prbg
