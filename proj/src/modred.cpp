#include "prbg/modred.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "prbg/errors.hpp"

namespace prbg {

namespace {

Chunks split_thirds(const Natural& r, std::size_t third) {
  return {shift_right(r, 2 * third), bit_slice(r, third, third), low_bits(r, third)};
}

void require_width(const Natural& x, std::size_t limit, const char* who) {
  if (x.bit_length() > limit) {
    std::ostringstream os;
    os << who << ": input has " << x.bit_length() << " bits, limit is " << limit;
    throw InputTooLarge(os.str());
  }
}

Natural correct(Natural r, const ModulusContext& ctx, ReductionStats* stats) {
  unsigned steps = 0;
  while (cmp(r, ctx.modulus()) >= 0) {
    r = sub(r, ctx.modulus());
    if (++steps > kCorrectionLimit) {
      std::ostringstream os;
      os << "reduction correction loop exceeded " << kCorrectionLimit << " steps (modulus "
         << ctx.bits() << " bits)";
      throw std::logic_error(os.str());
    }
  }
  if (stats != nullptr) {
    stats->corrections += steps;
    stats->max_corrections = std::max(stats->max_corrections, steps);
  }
  return r;
}

// Quotient estimate floor(floor(x / 2^n) * floor(2^m / N) / 2^(m-n)), then fix up.
// Both factors have about m - n bits.
Natural barrett_step(const Natural& x, std::size_t m, const Natural& mu, const ModulusContext& ctx,
                     ReductionStats* stats) {
  if (x.bit_length() <= ctx.bits()) return correct(x, ctx, stats);
  MulCounter* counter = stats != nullptr ? &stats->muls : nullptr;
  const Natural top = shift_right(x, ctx.bits());
  const Natural qhat = shift_right(mul(top, mu, ctx.mul_algorithm(), counter), m - ctx.bits());
  return correct(sub(x, mul(qhat, ctx.modulus(), ctx.mul_algorithm(), counter)), ctx, stats);
}

}  // namespace

std::string to_string(ReductionMethod method) {
  switch (method) {
    case ReductionMethod::Classical:
      return "classical";
    case ReductionMethod::Barrett:
      return "barrett";
    case ReductionMethod::Method1:
      return "method1";
    case ReductionMethod::Method2:
      return "method2";
  }
  return "unknown";
}

ReductionMethod parse_reduction_method(std::string_view name) {
  for (const auto m : kAllReductionMethods) {
    if (to_string(m) == name) return m;
  }
  throw ParameterError("unknown reduction method: " + std::string(name));
}

ModulusContext::ModulusContext(Natural modulus, MulAlgorithm alg)
    : modulus_(std::move(modulus)), bits_(modulus_.bit_length()), alg_(alg) {
  if (!modulus_.is_odd() || cmp(modulus_, Natural(3)) < 0) {
    throw InvalidModulus("modulus must be odd and at least 3");
  }
  if (bits_ % 6 != 0) {
    throw InvalidModulus("modulus bit length " + std::to_string(bits_) + " is not divisible by 6");
  }
  const std::size_t n = bits_;
  const std::size_t third = n / 3;
  mu_ = divrem(Natural::power_of_two(2 * n), modulus_).first;
  for (const std::size_t m : {method1_width(), method2_width()}) {
    mu_m_.emplace(m, divrem(Natural::power_of_two(m), modulus_).first);
  }
  r_ = divrem(Natural::power_of_two(n * 3 / 2), modulus_).second;
  r1_ = divrem(Natural::power_of_two(5 * third), modulus_).second;
  r2_ = divrem(Natural::power_of_two(4 * third), modulus_).second;
  r1_chunks_ = split_thirds(r1_, third);
  r2_chunks_ = split_thirds(r2_, third);
  chunk_products_ = {mul(r1_chunks_.high, r2_chunks_.high), mul(r1_chunks_.mid, r2_chunks_.mid),
                     mul(r1_chunks_.low, r2_chunks_.low)};
}

Natural ModulusContext::mu_for(std::size_t m) const {
  if (m == 2 * bits_) return mu_;
  if (const auto it = mu_m_.find(m); it != mu_m_.end()) return it->second;
  return divrem(Natural::power_of_two(m), modulus_).first;
}

Natural reduce_classical(const Natural& x, const ModulusContext& ctx, ReductionStats* stats) {
  if (stats != nullptr) ++stats->calls;
  return divrem(x, ctx.modulus()).second;
}

Natural reduce_barrett(const Natural& x, const ModulusContext& ctx, ReductionStats* stats) {
  require_width(x, 2 * ctx.bits(), "reduce_barrett");
  if (stats != nullptr) ++stats->calls;
  return barrett_step(x, 2 * ctx.bits(), ctx.mu(), ctx, stats);
}

Natural reduce_barrett_modified(const Natural& x, std::size_t m, const ModulusContext& ctx,
                                ReductionStats* stats) {
  if (m <= ctx.bits() || m > 2 * ctx.bits()) {
    throw ParameterError("modified Barrett width must satisfy n < m <= 2n");
  }
  require_width(x, m, "reduce_barrett_modified");
  if (stats != nullptr) ++stats->calls;
  return barrett_step(x, m, ctx.mu_for(m), ctx, stats);
}

// x = x1*2^(3n/2) + x2*2^n + x3  ->  C = x1*R + (x2*2^n + x3), then modified Barrett.
Natural reduce_method1(const Natural& x, const ModulusContext& ctx, ReductionStats* stats) {
  require_width(x, 2 * ctx.bits(), "reduce_method1");
  if (stats != nullptr) ++stats->calls;
  const std::size_t split = ctx.bits() * 3 / 2;
  const Natural high = shift_right(x, split);
  Natural folded = low_bits(x, split);
  if (!high.is_zero()) {
    MulCounter* counter = stats != nullptr ? &stats->muls : nullptr;
    folded = add(folded, mul(high, ctx.r(), ctx.mul_algorithm(), counter));
  }
  const std::size_t m = ctx.method1_width();
  if (folded.bit_length() > m) throw std::logic_error("method 1 fold exceeded its width");
  return barrett_step(folded, m, ctx.mu_for(m), ctx, stats);
}

// x = x1*2^(5n/3) + x2*2^(4n/3) + x3  ->  C = x1*R1 + x2*R2 + x3, where the two
// products are assembled third by third from three scalar products that share
// x1*x2 and the precomputed R1^M * R2^M.
Natural reduce_method2(const Natural& x, const ModulusContext& ctx, ReductionStats* stats) {
  require_width(x, 2 * ctx.bits(), "reduce_method2");
  if (stats != nullptr) ++stats->calls;
  const std::size_t third = ctx.bits() / 3;
  const Natural x1 = shift_right(x, 5 * third);
  const Natural x2 = bit_slice(x, 4 * third, third);
  Natural folded = low_bits(x, 4 * third);
  if (!x1.is_zero() || !x2.is_zero()) {
    MulCounter* counter = stats != nullptr ? &stats->muls : nullptr;
    const MulAlgorithm alg = ctx.mul_algorithm();
    const Natural x1x2 = mul(x1, x2, alg, counter);
    const Chunks& c1 = ctx.r1_chunks();
    const Chunks& c2 = ctx.r2_chunks();
    const Chunks& cp = ctx.chunk_products();
    folded = add(folded, shift_left(scalar_product_trick(x1, x2, c1.high, c2.high, x1x2, cp.high, alg, counter),
                                    2 * third));
    folded = add(folded,
                 shift_left(scalar_product_trick(x1, x2, c1.mid, c2.mid, x1x2, cp.mid, alg, counter), third));
    folded = add(folded, scalar_product_trick(x1, x2, c1.low, c2.low, x1x2, cp.low, alg, counter));
  }
  const std::size_t m = ctx.method2_width();
  if (folded.bit_length() > m) throw std::logic_error("method 2 fold exceeded its width");
  return barrett_step(folded, m, ctx.mu_for(m), ctx, stats);
}

Natural reduce(const Natural& x, const ModulusContext& ctx, ReductionMethod method, ReductionStats* stats) {
  switch (method) {
    case ReductionMethod::Classical:
      return reduce_classical(x, ctx, stats);
    case ReductionMethod::Barrett:
      return reduce_barrett(x, ctx, stats);
    case ReductionMethod::Method1:
      return reduce_method1(x, ctx, stats);
    case ReductionMethod::Method2:
      return reduce_method2(x, ctx, stats);
  }
  throw std::logic_error("unreachable reduction method");
}

Natural scalar_product_trick(const Natural& a, const Natural& b, const Natural& c, const Natural& d,
                             const Natural& ab, const Natural& cd, MulAlgorithm alg, MulCounter* counter) {
  const SignedNat cross = signed_mul(signed_sub(SignedNat(d), SignedNat(a)),
                                     signed_sub(SignedNat(b), SignedNat(c)), alg, counter);
  const SignedNat sum = signed_add(cross, SignedNat(add(ab, cd)));
  if (sum.negative) throw std::logic_error("scalar product trick produced a negative value");
  return sum.magnitude;
}

}  // namespace prbg
