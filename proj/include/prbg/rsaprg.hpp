#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "prbg/bignum.hpp"
#include "prbg/bitstring.hpp"
#include "prbg/modred.hpp"

namespace prbg {

/// (n, e, r, l): modulus bits, public exponent, output bits per iteration and
/// the total output cap.
struct RsaprgParams {
  std::size_t n = 6144;
  std::uint64_t e = 9;
  std::size_t r = 2196;
  std::uint64_t l = std::uint64_t{1} << 32;

  // Toy moduli (n >= 12) are accepted so the generator can be checked
  // exhaustively; the security floor lives in the estimator report.
  static constexpr std::size_t kMinBits = 12;

  // The recommended point (6144, 9, 2196, 2^32); other (n, e) need an explicit r.
  static RsaprgParams recommended() { return {}; }

  // Throws ParameterError.
  void validate() const;

  friend bool operator==(const RsaprgParams&, const RsaprgParams&) = default;
};

struct RsaprgKey {
  Natural modulus;
  // Present only on freshly generated keys.
  std::optional<Natural> p, q;
};

// Primes of exactly n/2 bits with the top two bits set, 40 Miller-Rabin
// rounds, gcd(e, (p-1)(q-1)) = 1. Deterministic in seed.
RsaprgKey rsaprg_keygen(std::size_t n, std::uint64_t e, std::uint64_t seed);

// Left-to-right binary exponentiation schedule after the implicit leading 1 bit.
enum class ExpStep { Square, Multiply };
std::vector<ExpStep> exponent_schedule(std::uint64_t e);

/// Which state the r output bits are taken from. The new state x_{h+1} is the
/// default; CurrentState taps x_h instead.
enum class OutputTap { NextState, CurrentState };

/// Calls made by the basic iteration, for the per-iteration invariant.
struct IterationCounts {
  std::uint64_t squarings = 0;
  std::uint64_t multiplications = 0;
  std::uint64_t reductions = 0;
};

/// Generator state: x in [0, N), the number of bits emitted so far, and the
/// reduction method used for every x^e step. Several generators may share
/// one context.
class Rsaprg {
 public:
  // x0 = seed_material mod N.
  Rsaprg(std::shared_ptr<const ModulusContext> ctx, RsaprgParams params, const Natural& seed_material,
         ReductionMethod method = ReductionMethod::Method2, OutputTap tap = OutputTap::NextState);

  // x <- x^e mod N; returns r low bits of the tapped state, LSB first.
  // Throws BudgetExhausted when bits_emitted + r > l.
  BitString iterate();
  // ceil(nbits / r) iterations truncated to nbits.
  BitString generate(std::uint64_t nbits);

  const Natural& state() const noexcept { return x_; }
  std::uint64_t bits_emitted() const noexcept { return bits_emitted_; }
  const RsaprgParams& params() const noexcept { return params_; }
  ReductionMethod method() const noexcept { return method_; }
  const ModulusContext& context() const noexcept { return *ctx_; }
  // x0 in {0, 1} gives a constant stream.
  bool degenerate_seed() const noexcept { return degenerate_; }
  const IterationCounts& counts() const noexcept { return counts_; }
  // Leaf multiplication and correction-loop statistics; off by default.
  void set_instrumented(bool on) noexcept { instrumented_ = on; }
  const ReductionStats& reduction_stats() const noexcept { return stats_; }

 private:
  BitString step();

  std::shared_ptr<const ModulusContext> ctx_;
  RsaprgParams params_;
  ReductionMethod method_;
  OutputTap tap_;
  std::vector<ExpStep> schedule_;
  Natural x_;
  std::uint64_t bits_emitted_ = 0;
  bool degenerate_ = false;
  IterationCounts counts_;
  bool instrumented_ = false;
  ReductionStats stats_;
};

// JSON key file: {"n","e","r","l","N"} plus "p","q" when include_private.
std::string rsaprg_params_to_json(const RsaprgParams& params, const RsaprgKey& key, bool include_private);
// Throws FormatError.
std::pair<RsaprgParams, RsaprgKey> rsaprg_params_from_json(const std::string& text);

}  // namespace prbg
