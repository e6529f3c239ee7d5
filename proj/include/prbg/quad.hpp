#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "prbg/bitstring.hpp"

namespace prbg {

// Packed word width d for coefficient columns.
#ifdef PRBG_QUAD_WORD32
using QuadWord = std::uint32_t;
#else
using QuadWord = std::uint64_t;
#endif
inline constexpr std::size_t kQuadWordBits = sizeof(QuadWord) * 8;

// Bit h of a packed vector lives in word h / d at position h % d.
using QuadVector = std::vector<QuadWord>;

struct QuadParams {
  std::size_t n = 160;                    // state bits
  std::size_t k = 2;                      // kn polynomials, (k-1)n output bits per iteration
  std::optional<std::size_t> l_precomp;   // half-block width for table acceleration

  void validate() const;  // throws ParameterError
  std::size_t polynomials() const noexcept { return k * n; }
  std::size_t output_bits() const noexcept { return (k - 1) * n; }
  std::size_t words_per_column() const noexcept { return (k * n + kQuadWordBits - 1) / kQuadWordBits; }
  // 1 constant + n linear + n(n-1)/2 quadratic
  std::size_t column_count() const noexcept { return 1 + n + n * (n - 1) / 2; }

  friend bool operator==(const QuadParams&, const QuadParams&) = default;
};

/// kn quadratic polynomials over GF(2) stored column-wise: one packed column of
/// kn bits per monomial, bit h-1 holding the coefficient in P_h. Columns run
/// constant, x_1..x_n, then x_i x_j for i < j in lexicographic order.
class QuadSystem {
 public:
  // Throws ParameterError on size mismatch or nonzero padding bits.
  QuadSystem(QuadParams params, std::vector<QuadWord> columns);
  static QuadSystem zero(QuadParams params);

  const QuadParams& params() const noexcept { return params_; }
  std::size_t words_per_column() const noexcept { return words_; }
  std::size_t column_count() const noexcept { return params_.column_count(); }
  std::span<const QuadWord> column(std::size_t index) const noexcept {
    return {columns_.data() + index * words_, words_};
  }
  std::span<const QuadWord> raw() const noexcept { return columns_; }

  static constexpr std::size_t constant_index() noexcept { return 0; }
  std::size_t linear_index(std::size_t i) const noexcept { return 1 + i; }
  // 0-based i < j
  std::size_t quadratic_index(std::size_t i, std::size_t j) const noexcept {
    const std::size_t n = params_.n;
    return 1 + n + i * n - i * (i + 1) / 2 + (j - i - 1);
  }
  // Coefficient of column `index` in polynomial P_{poly+1}.
  bool coefficient(std::size_t index, std::size_t poly) const noexcept {
    return ((column(index)[poly / kQuadWordBits] >> (poly % kQuadWordBits)) & 1U) != 0;
  }

  friend bool operator==(const QuadSystem&, const QuadSystem&) = default;

 private:
  QuadParams params_;
  std::size_t words_;
  std::vector<QuadWord> columns_;
};

/// Columns and word XORs performed by the evaluators.
struct XorCounter {
  std::uint64_t column_xors = 0;
  std::uint64_t word_xors = 0;
};

struct QuadMemoryReport {
  std::uint64_t columns_stored = 0;   // including explicit zero entries
  std::uint64_t columns_nonzero = 0;  // entries that can be nonzero
  std::size_t words_per_column = 0;
  std::uint64_t bits_stored() const noexcept { return columns_stored * words_per_column * kQuadWordBits; }
  std::uint64_t bits_nonzero() const noexcept { return columns_nonzero * words_per_column * kQuadWordBits; }
};

// Coefficient bits are read from the splitmix64 stream LSB-first in canonical
// column order, followed by the n bits of x0.
struct QuadKey {
  QuadSystem system;
  QuadVector x0;
};
QuadKey quad_keygen(const QuadParams& params, std::uint64_t seed);

QuadVector evaluate_classical(const QuadSystem& sys, const QuadVector& x, XorCounter* counter = nullptr);
QuadMemoryReport classical_memory(const QuadParams& params);

/// Block precomputation. Variables are grouped into m = n / 2l blocks of 2l.
/// Each block gets a 2^(2l)-entry table: the XOR of its linear and
/// intra-block quadratic columns for every assignment of the block. Each pair
/// of blocks gets four 2^l x 2^l tables, one per pairing of half-blocks, with
/// the cross quadratic columns. Entry 0 of every table is an explicit zero
/// column so evaluation never branches.
class QuadPrecomp {
 public:
  QuadPrecomp(const QuadSystem& sys, std::size_t l);  // throws ParameterError unless 2l | n

  std::size_t half_width() const noexcept { return l_; }
  std::size_t blocks() const noexcept { return m_; }
  std::size_t pairs() const noexcept { return m_ * (m_ - 1) / 2; }
  std::size_t words_per_column() const noexcept { return words_; }
  // Index of the pair (a, b), a < b, in lexicographic order.
  std::size_t pair_index(std::size_t a, std::size_t b) const noexcept {
    return a * m_ - a * (a + 1) / 2 + (b - a - 1);
  }
  std::span<const QuadWord> block_entry(std::size_t block, std::size_t assignment) const noexcept;
  // half = 2 * (half of the first block) + (half of the second block)
  std::span<const QuadWord> pair_entry(std::size_t pair, std::size_t half, std::size_t u,
                                       std::size_t v) const noexcept;
  // 1 (constant) + m + 4 C(m, 2)
  std::size_t lookups_per_evaluation() const noexcept { return 1 + m_ + 4 * pairs(); }
  QuadMemoryReport memory() const noexcept;

 private:
  std::size_t l_, m_, words_;
  std::vector<QuadWord> block_tables_;
  std::vector<QuadWord> pair_tables_;
};

inline QuadPrecomp build_precomp(const QuadSystem& sys, std::size_t l) { return QuadPrecomp(sys, l); }

// Requires `pre` to have been built from `sys`.
QuadVector evaluate_precomp(const QuadSystem& sys, const QuadPrecomp& pre, const QuadVector& x,
                            XorCounter* counter = nullptr);

/// Classical or table-driven evaluation of one system.
class QuadEvaluator {
 public:
  explicit QuadEvaluator(const QuadSystem& sys) : sys_(&sys) {}
  QuadEvaluator(const QuadSystem& sys, const QuadPrecomp& pre) : sys_(&sys), pre_(&pre) {}

  QuadVector operator()(const QuadVector& x, XorCounter* counter = nullptr) const {
    return pre_ != nullptr ? evaluate_precomp(*sys_, *pre_, x, counter) : evaluate_classical(*sys_, x, counter);
  }
  std::string name() const;

 private:
  const QuadSystem* sys_;
  const QuadPrecomp* pre_ = nullptr;
};

inline constexpr std::uint64_t kQuadDefaultCap = std::uint64_t{1} << 40;

struct QuadState {
  QuadVector x;
  std::uint64_t bits_emitted = 0;
  std::uint64_t cap = kQuadDefaultCap;
};

// x <- (P_1..P_n)(x); returns P_{n+1}..P_{kn} in that order.
// Throws BudgetExhausted when the cap would be exceeded.
BitString quad_iterate(const QuadSystem& sys, QuadState& state, const QuadEvaluator& eval,
                       XorCounter* counter = nullptr);
BitString quad_generate(const QuadSystem& sys, QuadState& state, const QuadEvaluator& eval, std::uint64_t nbits);

// Analytic word-XOR per output bit: (n + C(n,2)/2) / d for the classical
// evaluator (l == 0), 2 (m + 4 C(m,2)) / d with m = n / 2l otherwise.
double xor_cost_estimate(const QuadParams& params, std::size_t l, std::size_t word_bits = kQuadWordBits);

bool state_bit(const QuadVector& x, std::size_t i) noexcept;
void set_state_bit(QuadVector& x, std::size_t i, bool value) noexcept;
// Bit i of the state is bit i of the hex integer.
std::string quad_state_to_hex(const QuadVector& x);
QuadVector quad_state_from_hex(std::string_view hex, std::size_t n);  // throws ParameterError if too wide

// Binary container: "QUAD", version byte, then n, k, d as little-endian
// uint32, then every column padded to whole d-bit little-endian words.
inline constexpr std::uint8_t kQuadFileVersion = 1;
void write_quad_system(std::ostream& os, const QuadSystem& sys);
QuadSystem read_quad_system(std::istream& is);  // throws FormatError

}  // namespace prbg
