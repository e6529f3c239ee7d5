#include "prbg/bignum.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

#include "prbg/errors.hpp"

namespace prbg {

Natural Natural::power_of_two(std::size_t k) {
  std::vector<Limb> limbs(k / kLimbBits + 1, 0);
  limbs.back() = Limb{1} << (k % kLimbBits);
  return from_limbs(std::move(limbs));
}

std::size_t Natural::bit_length() const noexcept {
  if (limbs_.empty()) return 0;
  return limbs_.size() * kLimbBits - static_cast<std::size_t>(std::countl_zero(limbs_.back()));
}

std::uint64_t MulCounter::total() const noexcept {
  std::uint64_t sum = 0;
  for (const auto& [k, v] : counts_) sum += v;
  return sum;
}

std::uint64_t MulCounter::equivalent(std::size_t class_limbs) const {
  if (class_limbs == 0) throw std::invalid_argument("class_limbs must be positive");
  auto units = [class_limbs](std::size_t len) {
    return std::max<std::size_t>(1, (len + class_limbs / 2) / class_limbs);
  };
  std::uint64_t sum = 0;
  for (const auto& [k, v] : counts_) sum += v * units(k.first) * units(k.second);
  return sum;
}

std::string MulCounter::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : counts_) {
    if (!first) os << ';';
    first = false;
    os << k.first << 'x' << k.second << '=' << v;
  }
  return os.str();
}

Natural add(const Natural& a, const Natural& b) {
  const auto& longer = a.limb_count() >= b.limb_count() ? a : b;
  const auto& shorter = a.limb_count() >= b.limb_count() ? b : a;
  const auto x = longer.limbs();
  const auto y = shorter.limbs();
  std::vector<Limb> out(x.size() + 1);
  Limb carry = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Limb yi = i < y.size() ? y[i] : 0;
    const Limb s = x[i] + yi;
    const Limb c1 = s < x[i];
    out[i] = s + carry;
    carry = c1 | (out[i] < s);
  }
  out[x.size()] = carry;
  return Natural::from_limbs(std::move(out));
}

Natural sub(const Natural& a, const Natural& b) {
  if (cmp(a, b) < 0) throw std::underflow_error("subtraction underflow");
  const auto x = a.limbs();
  const auto y = b.limbs();
  std::vector<Limb> out(x.size());
  Limb borrow = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const Limb yi = i < y.size() ? y[i] : 0;
    const Limb d = x[i] - yi;
    const Limb b1 = x[i] < yi;
    out[i] = d - borrow;
    borrow = b1 | (d < borrow);
  }
  return Natural::from_limbs(std::move(out));
}

std::strong_ordering cmp(const Natural& a, const Natural& b) noexcept {
  if (a.limb_count() != b.limb_count()) return a.limb_count() <=> b.limb_count();
  const auto x = a.limbs();
  const auto y = b.limbs();
  for (std::size_t i = x.size(); i-- > 0;) {
    if (x[i] != y[i]) return x[i] <=> y[i];
  }
  return std::strong_ordering::equal;
}

Natural shift_left(const Natural& a, std::size_t k) {
  if (a.is_zero()) return {};
  const std::size_t words = k / kLimbBits;
  const unsigned bits = k % kLimbBits;
  const auto x = a.limbs();
  std::vector<Limb> out(x.size() + words + 1, 0);
  if (bits == 0) {
    std::copy(x.begin(), x.end(), out.begin() + static_cast<std::ptrdiff_t>(words));
  } else {
    Limb carry = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      out[i + words] = (x[i] << bits) | carry;
      carry = x[i] >> (kLimbBits - bits);
    }
    out[x.size() + words] = carry;
  }
  return Natural::from_limbs(std::move(out));
}

Natural shift_right(const Natural& a, std::size_t k) {
  const std::size_t words = k / kLimbBits;
  const unsigned bits = k % kLimbBits;
  const auto x = a.limbs();
  if (words >= x.size()) return {};
  std::vector<Limb> out(x.size() - words);
  if (bits == 0) {
    std::copy(x.begin() + static_cast<std::ptrdiff_t>(words), x.end(), out.begin());
  } else {
    for (std::size_t i = 0; i < out.size(); ++i) {
      const Limb hi = i + words + 1 < x.size() ? x[i + words + 1] : 0;
      out[i] = (x[i + words] >> bits) | (hi << (kLimbBits - bits));
    }
  }
  return Natural::from_limbs(std::move(out));
}

Natural low_bits(const Natural& a, std::size_t r) {
  if (r >= a.bit_length()) return a;
  const auto x = a.limbs();
  const std::size_t words = (r + kLimbBits - 1) / kLimbBits;
  std::vector<Limb> out(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(words));
  if (r % kLimbBits != 0) out.back() &= (Limb{1} << (r % kLimbBits)) - 1;
  return Natural::from_limbs(std::move(out));
}

Natural bit_slice(const Natural& a, std::size_t pos, std::size_t len) {
  return low_bits(shift_right(a, pos), len);
}

std::uint64_t mod_small(const Natural& a, std::uint64_t d) {
  if (d == 0) throw DivisionByZero();
  unsigned __int128 rem = 0;
  const auto x = a.limbs();
  for (std::size_t i = x.size(); i-- > 0;) {
    rem = ((rem << 64) | x[i]) % d;
  }
  return static_cast<std::uint64_t>(rem);
}

SignedNat signed_add(const SignedNat& a, const SignedNat& b) {
  if (a.negative == b.negative) return {add(a.magnitude, b.magnitude), a.negative};
  if (cmp(a.magnitude, b.magnitude) >= 0) return {sub(a.magnitude, b.magnitude), a.negative};
  return {sub(b.magnitude, a.magnitude), b.negative};
}

SignedNat signed_sub(const SignedNat& a, const SignedNat& b) { return signed_add(a, negate(b)); }

SignedNat signed_mul(const SignedNat& a, const SignedNat& b, MulAlgorithm alg, MulCounter* counter) {
  return {mul(a.magnitude, b.magnitude, alg, counter), a.negative != b.negative};
}

std::string to_hex(const Natural& a) {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (a.is_zero()) return "0";
  std::string out;
  const auto x = a.limbs();
  out.reserve(x.size() * 16);
  for (std::size_t i = x.size(); i-- > 0;) {
    for (int nib = 15; nib >= 0; --nib) out.push_back(kDigits[(x[i] >> (4 * nib)) & 0xF]);
  }
  const auto first = out.find_first_not_of('0');
  return out.substr(first);
}

Natural from_hex(std::string_view hex) {
  if (hex.empty()) throw MalformedHex("empty string");
  if (hex.size() > 1 && hex.front() == '0') throw MalformedHex("leading zero");
  std::vector<Limb> limbs((hex.size() + 15) / 16, 0);
  for (std::size_t i = 0; i < hex.size(); ++i) {
    const char c = hex[hex.size() - 1 - i];
    Limb v;
    if (c >= '0' && c <= '9') {
      v = static_cast<Limb>(c - '0');
    } else if (c >= 'a' && c <= 'f') {
      v = static_cast<Limb>(c - 'a' + 10);
    } else {
      throw MalformedHex(std::string("invalid character '") + c + "'");
    }
    limbs[i / 16] |= v << (4 * (i % 16));
  }
  return Natural::from_limbs(std::move(limbs));
}

}  // namespace prbg
