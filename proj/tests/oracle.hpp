#pragma once

#include <gmpxx.h>

#include <string>

#include "prbg/bignum.hpp"

namespace oracle {

inline mpz_class to_mpz(const prbg::Natural& a) { return mpz_class(prbg::to_hex(a), 16); }

inline prbg::Natural from_mpz(const mpz_class& z) { return prbg::from_hex(z.get_str(16)); }

// Reference splitmix64, written out independently of the library.
struct RefSplitMix {
  unsigned long long s;
  unsigned long long next() {
    unsigned long long z = (s += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
};

// Random integer below 2^bits from gmp's own generator.
inline mpz_class random_bits(gmp_randclass& r, unsigned long bits) { return r.get_z_bits(bits); }

}  // namespace oracle
