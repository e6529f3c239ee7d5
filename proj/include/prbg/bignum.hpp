#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace prbg {

// Limb width is fixed at compile time; every size below is in limbs of this width.
using Limb = std::uint64_t;
inline constexpr std::size_t kLimbBits = 64;

/// Arbitrary-precision unsigned integer.
///
/// Limbs are stored least-significant first and the vector never carries a
/// most-significant zero limb, so zero is the empty vector.
class Natural {
 public:
  Natural() = default;
  explicit Natural(std::uint64_t value) {
    if (value != 0) limbs_.push_back(value);
  }

  static Natural from_limbs(std::vector<Limb> limbs) {
    Natural out;
    out.limbs_ = std::move(limbs);
    out.normalize();
    return out;
  }
  static Natural from_limbs(std::span<const Limb> limbs) {
    return from_limbs(std::vector<Limb>(limbs.begin(), limbs.end()));
  }
  static Natural power_of_two(std::size_t k);

  std::span<const Limb> limbs() const noexcept { return limbs_; }
  std::size_t limb_count() const noexcept { return limbs_.size(); }
  bool is_zero() const noexcept { return limbs_.empty(); }
  bool is_odd() const noexcept { return !limbs_.empty() && (limbs_[0] & 1U) != 0; }
  std::size_t bit_length() const noexcept;
  bool bit(std::size_t i) const noexcept {
    const std::size_t w = i / kLimbBits;
    return w < limbs_.size() && ((limbs_[w] >> (i % kLimbBits)) & 1U) != 0;
  }
  // Least significant 64 bits.
  std::uint64_t low_u64() const noexcept { return limbs_.empty() ? 0 : limbs_[0]; }

  friend bool operator==(const Natural&, const Natural&) = default;

 private:
  void normalize() noexcept {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  std::vector<Limb> limbs_;
};

/// Magnitude plus sign. Zero is never negative.
struct SignedNat {
  Natural magnitude;
  bool negative = false;

  SignedNat() = default;
  SignedNat(Natural m, bool neg = false) : magnitude(std::move(m)), negative(neg && !magnitude.is_zero()) {}

  friend bool operator==(const SignedNat&, const SignedNat&) = default;
};

/// Multiplication algorithm with an explicit recursion depth. Below the last
/// level every product is a schoolbook "leaf".
struct MulAlgorithm {
  enum class Kind { Schoolbook, Karatsuba, ToomCook3 };
  Kind kind = Kind::Schoolbook;
  int levels = 0;

  static constexpr MulAlgorithm schoolbook() { return {Kind::Schoolbook, 0}; }
  static MulAlgorithm karatsuba(int levels);  // levels in {1, 2}
  static constexpr MulAlgorithm toom_cook3() { return {Kind::ToomCook3, 1}; }

  std::string name() const;
  static MulAlgorithm parse(std::string_view name);

  friend bool operator==(const MulAlgorithm&, const MulAlgorithm&) = default;
};

/// Leaf (schoolbook base-case) multiplication counts keyed by operand sizes in
/// limbs, larger operand first. Squarings are recorded as (len, len).
class MulCounter {
 public:
  using Key = std::pair<std::size_t, std::size_t>;

  void record(std::size_t a_limbs, std::size_t b_limbs) {
    if (a_limbs < b_limbs) std::swap(a_limbs, b_limbs);
    ++counts_[{a_limbs, b_limbs}];
  }
  void merge(const MulCounter& other) {
    for (const auto& [k, v] : other.counts_) counts_[k] += v;
  }
  void reset() { counts_.clear(); }

  const std::map<Key, std::uint64_t>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept;

  // Leaf work expressed in multiples of a class_limbs x class_limbs product.
  // An operand of L limbs counts as max(1, round(L / class_limbs)) units, so
  // carry limbs (class + 1) stay in class and an n x n/2 product counts twice.
  std::uint64_t equivalent(std::size_t class_limbs) const;

  // "LAxLB=count" entries joined by ';', ordered by key.
  std::string to_string() const;

  friend bool operator==(const MulCounter&, const MulCounter&) = default;

 private:
  std::map<Key, std::uint64_t> counts_;
};

Natural add(const Natural& a, const Natural& b);
// Throws std::underflow_error when a < b.
Natural sub(const Natural& a, const Natural& b);
std::strong_ordering cmp(const Natural& a, const Natural& b) noexcept;
Natural shift_left(const Natural& a, std::size_t k);
Natural shift_right(const Natural& a, std::size_t k);
// a mod 2^r
Natural low_bits(const Natural& a, std::size_t r);
// floor(a / 2^pos) mod 2^len
Natural bit_slice(const Natural& a, std::size_t pos, std::size_t len);

Natural mul(const Natural& a, const Natural& b, MulAlgorithm alg = MulAlgorithm::schoolbook(),
            MulCounter* counter = nullptr);
Natural square(const Natural& a, MulAlgorithm alg = MulAlgorithm::schoolbook(),
               MulCounter* counter = nullptr);

// Schoolbook long division. Throws DivisionByZero.
std::pair<Natural, Natural> divrem(const Natural& a, const Natural& b);
// Remainder by a single word divisor. Throws DivisionByZero.
std::uint64_t mod_small(const Natural& a, std::uint64_t d);

SignedNat signed_add(const SignedNat& a, const SignedNat& b);
SignedNat signed_sub(const SignedNat& a, const SignedNat& b);
SignedNat signed_mul(const SignedNat& a, const SignedNat& b,
                     MulAlgorithm alg = MulAlgorithm::schoolbook(), MulCounter* counter = nullptr);
inline SignedNat negate(SignedNat a) { return SignedNat(std::move(a.magnitude), !a.negative); }

// Lowercase, most significant digit first, "0" for zero.
std::string to_hex(const Natural& a);
// Strict inverse of to_hex. Throws MalformedHex.
Natural from_hex(std::string_view hex);

inline std::strong_ordering operator<=>(const Natural& a, const Natural& b) noexcept { return cmp(a, b); }
inline Natural operator+(const Natural& a, const Natural& b) { return add(a, b); }
inline Natural operator-(const Natural& a, const Natural& b) { return sub(a, b); }
inline Natural operator*(const Natural& a, const Natural& b) { return mul(a, b); }
inline Natural operator<<(const Natural& a, std::size_t k) { return shift_left(a, k); }
inline Natural operator>>(const Natural& a, std::size_t k) { return shift_right(a, k); }
inline Natural operator%(const Natural& a, const Natural& b) { return divrem(a, b).second; }
inline Natural operator/(const Natural& a, const Natural& b) { return divrem(a, b).first; }

}  // namespace prbg
