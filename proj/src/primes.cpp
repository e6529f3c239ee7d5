#include "prbg/primes.hpp"

#include <array>
#include <vector>

namespace prbg {

namespace {

std::vector<std::uint64_t> small_primes() {
  constexpr std::uint64_t kLimit = 2000;
  std::vector<bool> composite(kLimit, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i < kLimit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j < kLimit; j += i) composite[j] = true;
  }
  return out;
}

const std::vector<std::uint64_t>& sieve_primes() {
  static const std::vector<std::uint64_t> primes = small_primes();
  return primes;
}

Natural mulmod(const Natural& a, const Natural& b, const Natural& m) { return divrem(mul(a, b), m).second; }

}  // namespace

Natural modpow(const Natural& base, const Natural& exp, const Natural& modulus) {
  if (modulus == Natural(1)) return {};
  const Natural b = divrem(base, modulus).second;
  Natural result(1);
  for (std::size_t i = exp.bit_length(); i-- > 0;) {
    result = divrem(square(result), modulus).second;
    if (exp.bit(i)) result = mulmod(result, b, modulus);
  }
  return result;
}

bool is_probable_prime(const Natural& n, int rounds, SplitMix64& rng) {
  if (cmp(n, Natural(2)) < 0) return false;
  for (const auto p : sieve_primes()) {
    if (n == Natural(p)) return true;
    if (mod_small(n, p) == 0) return false;
  }
  const Natural one(1);
  const Natural n_minus_1 = sub(n, one);
  std::size_t s = 0;
  while (!n_minus_1.bit(s)) ++s;
  const Natural d = shift_right(n_minus_1, s);
  const Natural span = sub(n, Natural(3));  // bases in [2, n - 2]

  for (int round = 0; round < rounds; ++round) {
    const Natural a = add(divrem(random_natural(rng, n.bit_length() + 64), span).second, Natural(2));
    Natural x = modpow(a, d, n);
    if (x == one || x == n_minus_1) continue;
    bool witness = true;
    for (std::size_t r = 1; r < s; ++r) {
      x = divrem(square(x), n).second;
      if (x == n_minus_1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace prbg
