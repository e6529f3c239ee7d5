#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include "prbg/bignum.hpp"

namespace prbg {

enum class ReductionMethod { Classical, Barrett, Method1, Method2 };

std::string to_string(ReductionMethod method);
ReductionMethod parse_reduction_method(std::string_view name);
inline constexpr std::array<ReductionMethod, 4> kAllReductionMethods = {
    ReductionMethod::Classical, ReductionMethod::Barrett, ReductionMethod::Method1, ReductionMethod::Method2};

/// High, middle and low thirds of an n-bit residue: R = H*2^(2n/3) + I*2^(n/3) + L.
struct Chunks {
  Natural high, mid, low;
};

/// A fixed modulus with every constant the reductions need, computed once.
///
/// Bit positions used by the folding methods, with n = bit_length(N):
///   method 1 splits x at 3n/2 and n and folds with R  = 2^(3n/2) mod N
///   method 2 splits x at 5n/3 and 4n/3 and folds with R1 = 2^(5n/3) mod N,
///   R2 = 2^(4n/3) mod N, each cut into thirds.
/// n must be divisible by 6 so these positions are exact.
class ModulusContext {
 public:
  // Throws InvalidModulus if N is even, N < 3, or bit_length(N) % 6 != 0.
  explicit ModulusContext(Natural modulus, MulAlgorithm alg = MulAlgorithm::karatsuba(1));

  const Natural& modulus() const noexcept { return modulus_; }
  std::size_t bits() const noexcept { return bits_; }
  const Natural& mu() const noexcept { return mu_; }
  // floor(2^m / N); mu() is the m = 2n case. Cached for 2n and the two fold
  // widths, computed otherwise.
  Natural mu_for(std::size_t m) const;
  const Natural& r() const noexcept { return r_; }
  const Natural& r1() const noexcept { return r1_; }
  const Natural& r2() const noexcept { return r2_; }
  const Chunks& r1_chunks() const noexcept { return r1_chunks_; }
  const Chunks& r2_chunks() const noexcept { return r2_chunks_; }
  // R1^M * R2^M for M = high, mid, low.
  const Chunks& chunk_products() const noexcept { return chunk_products_; }
  MulAlgorithm mul_algorithm() const noexcept { return alg_; }

  // Modified-Barrett widths after folding: the folded value always fits.
  std::size_t method1_width() const noexcept { return bits_ * 3 / 2 + 2; }
  std::size_t method2_width() const noexcept { return bits_ * 4 / 3 + 2; }

 private:
  Natural modulus_;
  std::size_t bits_;
  MulAlgorithm alg_;
  Natural mu_;
  std::map<std::size_t, Natural> mu_m_;
  Natural r_, r1_, r2_;
  Chunks r1_chunks_, r2_chunks_, chunk_products_;
};

inline ModulusContext make_context(Natural modulus, MulAlgorithm alg = MulAlgorithm::karatsuba(1)) {
  return ModulusContext(std::move(modulus), alg);
}

/// Instrumentation shared by all reductions. Optional everywhere.
struct ReductionStats {
  std::uint64_t calls = 0;
  std::uint64_t corrections = 0;     // total "subtract N" steps
  unsigned max_corrections = 0;      // worst single call
  MulCounter muls;                   // leaf multiplications
};

// Correction loops that run more often than this indicate a broken quotient estimate.
inline constexpr unsigned kCorrectionLimit = 8;

Natural reduce_classical(const Natural& x, const ModulusContext& ctx, ReductionStats* stats = nullptr);
// bit_length(x) <= 2n, else InputTooLarge.
Natural reduce_barrett(const Natural& x, const ModulusContext& ctx, ReductionStats* stats = nullptr);
// n < m <= 2n and bit_length(x) <= m.
Natural reduce_barrett_modified(const Natural& x, std::size_t m, const ModulusContext& ctx,
                                ReductionStats* stats = nullptr);
Natural reduce_method1(const Natural& x, const ModulusContext& ctx, ReductionStats* stats = nullptr);
Natural reduce_method2(const Natural& x, const ModulusContext& ctx, ReductionStats* stats = nullptr);
Natural reduce(const Natural& x, const ModulusContext& ctx, ReductionMethod method,
               ReductionStats* stats = nullptr);

/// a*c + b*d from the precomputed products ab = a*b and cd = c*d with a single
/// new multiplication: a*c + b*d = (d - a)(b - c) + ab + cd.
Natural scalar_product_trick(const Natural& a, const Natural& b, const Natural& c, const Natural& d,
                             const Natural& ab, const Natural& cd,
                             MulAlgorithm alg = MulAlgorithm::schoolbook(), MulCounter* counter = nullptr);

}  // namespace prbg
