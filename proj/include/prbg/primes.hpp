#pragma once

#include <cstdint>

#include "prbg/bignum.hpp"
#include "prbg/random.hpp"

namespace prbg {

// base^exp mod modulus by left-to-right square-and-multiply with divrem.
Natural modpow(const Natural& base, const Natural& exp, const Natural& modulus);

// Trial division by small primes, then `rounds` Miller-Rabin rounds with
// bases drawn from rng.
bool is_probable_prime(const Natural& n, int rounds, SplitMix64& rng);

}  // namespace prbg
