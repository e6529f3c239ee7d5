#include "prbg/rsaprg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "json.hpp"

#include "prbg/errors.hpp"
#include "prbg/primes.hpp"
#include "prbg/random.hpp"

namespace prbg {

namespace {

constexpr int kMillerRabinRounds = 40;

void validate_exponent(std::uint64_t e) {
  if (e < 3 || e % 2 == 0) throw ParameterError("public exponent must be odd and at least 3");
}

Natural random_prime(std::size_t bits, std::uint64_t e, SplitMix64& rng) {
  const Natural top_two = add(Natural::power_of_two(bits - 1), Natural::power_of_two(bits - 2));
  for (;;) {
    Natural candidate = random_natural(rng, bits);
    candidate = add(low_bits(candidate, bits - 2), top_two);
    if (!candidate.is_odd()) candidate = add(candidate, Natural(1));
    if (std::gcd(e, mod_small(sub(candidate, Natural(1)), e)) != 1) continue;
    if (is_probable_prime(candidate, kMillerRabinRounds, rng)) return candidate;
  }
}

}  // namespace

void RsaprgParams::validate() const {
  if (n < kMinBits || n % 6 != 0) {
    throw ParameterError("modulus bits must be a multiple of 6 and at least " + std::to_string(kMinBits));
  }
  validate_exponent(e);
  if (r == 0 || r >= n) throw ParameterError("output bits per iteration must satisfy 0 < r < n");
  if (l == 0) throw ParameterError("output cap l must be positive");
}

RsaprgKey rsaprg_keygen(std::size_t n, std::uint64_t e, std::uint64_t seed) {
  if (n < RsaprgParams::kMinBits || n % 6 != 0) {
    throw ParameterError("modulus bits must be a multiple of 6 and at least " +
                         std::to_string(RsaprgParams::kMinBits));
  }
  validate_exponent(e);
  SplitMix64 rng(seed);
  const std::size_t half = n / 2;
  Natural p = random_prime(half, e, rng);
  Natural q;
  do {
    q = random_prime(half, e, rng);
  } while (q == p);
  RsaprgKey key;
  key.modulus = mul(p, q, MulAlgorithm::karatsuba(1));
  key.p = std::move(p);
  key.q = std::move(q);
  if (key.modulus.bit_length() != n) throw std::logic_error("generated modulus has the wrong bit length");
  return key;
}

std::vector<ExpStep> exponent_schedule(std::uint64_t e) {
  validate_exponent(e);
  std::vector<ExpStep> steps;
  const int top = 63 - std::countl_zero(e);
  for (int bit = top - 1; bit >= 0; --bit) {
    steps.push_back(ExpStep::Square);
    if (((e >> bit) & 1U) != 0) steps.push_back(ExpStep::Multiply);
  }
  return steps;
}

Rsaprg::Rsaprg(std::shared_ptr<const ModulusContext> ctx, RsaprgParams params, const Natural& seed_material,
               ReductionMethod method, OutputTap tap)
    : ctx_(std::move(ctx)), params_(params), method_(method), tap_(tap) {
  if (!ctx_) throw ParameterError("missing modulus context");
  params_.validate();
  if (ctx_->bits() != params_.n) throw ParameterError("modulus bit length does not match parameter n");
  schedule_ = exponent_schedule(params_.e);
  x_ = reduce_classical(seed_material, *ctx_);
  degenerate_ = cmp(x_, Natural(1)) <= 0;
}

BitString Rsaprg::step() {
  const Natural previous = x_;
  const MulAlgorithm alg = ctx_->mul_algorithm();
  ReductionStats* stats = instrumented_ ? &stats_ : nullptr;
  MulCounter* counter = instrumented_ ? &stats_.muls : nullptr;
  for (const ExpStep s : schedule_) {
    if (s == ExpStep::Square) {
      x_ = square(x_, alg, counter);
      ++counts_.squarings;
    } else {
      x_ = mul(x_, previous, alg, counter);
      ++counts_.multiplications;
    }
    x_ = reduce(x_, *ctx_, method_, stats);
    ++counts_.reductions;
  }
  const Natural& tapped = tap_ == OutputTap::NextState ? x_ : previous;
  BitString out;
  const auto limbs = tapped.limbs();
  for (std::size_t done = 0, i = 0; done < params_.r; ++i) {
    const unsigned take = static_cast<unsigned>(std::min<std::size_t>(kLimbBits, params_.r - done));
    out.append_bits(i < limbs.size() ? limbs[i] : 0, take);
    done += take;
  }
  return out;
}

BitString Rsaprg::iterate() {
  if (bits_emitted_ + params_.r > params_.l) throw BudgetExhausted("RSAPRG output cap reached");
  BitString out = step();
  bits_emitted_ += params_.r;
  return out;
}

BitString Rsaprg::generate(std::uint64_t nbits) {
  if (nbits > params_.l - bits_emitted_) throw BudgetExhausted("RSAPRG output cap reached");
  BitString out;
  while (out.size() < nbits) out.append(step());
  out.truncate(nbits);
  bits_emitted_ += nbits;
  return out;
}

std::string rsaprg_params_to_json(const RsaprgParams& params, const RsaprgKey& key, bool include_private) {
  nlohmann::ordered_json j;
  j["n"] = params.n;
  j["e"] = params.e;
  j["r"] = params.r;
  j["l"] = params.l;
  j["N"] = to_hex(key.modulus);
  if (include_private) {
    if (!key.p || !key.q) throw ParameterError("private factors are not available");
    j["p"] = to_hex(*key.p);
    j["q"] = to_hex(*key.q);
  }
  return j.dump(2) + "\n";
}

std::pair<RsaprgParams, RsaprgKey> rsaprg_params_from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    RsaprgParams params;
    params.n = j.at("n").get<std::size_t>();
    params.e = j.at("e").get<std::uint64_t>();
    params.r = j.at("r").get<std::size_t>();
    params.l = j.at("l").get<std::uint64_t>();
    RsaprgKey key;
    key.modulus = from_hex(j.at("N").get<std::string>());
    if (j.contains("p")) key.p = from_hex(j.at("p").get<std::string>());
    if (j.contains("q")) key.q = from_hex(j.at("q").get<std::string>());
    return {params, key};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid key file: ") + e.what());
  } catch (const MalformedHex& e) {
    throw FormatError(std::string("invalid key file: ") + e.what());
  }
}

}  // namespace prbg
