#include "prbg/quad.hpp"

#include <algorithm>
#include <bit>
#include <istream>
#include <ostream>

#include "prbg/bignum.hpp"
#include "prbg/errors.hpp"
#include "prbg/random.hpp"

namespace prbg {

namespace {

constexpr std::size_t kMaxHalfWidth = 4;

inline void xor_into(std::span<QuadWord> acc, std::span<const QuadWord> col) noexcept {
  for (std::size_t w = 0; w < acc.size(); ++w) acc[w] ^= col[w];
}

inline void count(XorCounter* counter, std::uint64_t columns, std::size_t words) noexcept {
  if (counter != nullptr) {
    counter->column_xors += columns;
    counter->word_xors += columns * words;
  }
}

// Bits [pos, pos + len) of x as an integer, len <= 8.
inline std::size_t extract_bits(const QuadVector& x, std::size_t pos, std::size_t len) noexcept {
  const std::size_t w = pos / kQuadWordBits;
  const std::size_t off = pos % kQuadWordBits;
  std::uint64_t v = static_cast<std::uint64_t>(x[w]) >> off;
  if (off + len > kQuadWordBits && w + 1 < x.size()) {
    v |= static_cast<std::uint64_t>(x[w + 1]) << (kQuadWordBits - off);
  }
  return static_cast<std::size_t>(v & ((std::uint64_t{1} << len) - 1));
}

void require_state(const QuadSystem& sys, const QuadVector& x) {
  if (x.size() != (sys.params().n + kQuadWordBits - 1) / kQuadWordBits) {
    throw ParameterError("state vector has the wrong number of words");
  }
}

}  // namespace

void QuadParams::validate() const {
  if (k < 2) throw ParameterError("QUAD expansion factor k must be at least 2");
  if (n < 8) throw ParameterError("QUAD state size n must be at least 8");
  if (l_precomp) {
    if (*l_precomp != 2 && *l_precomp != 4) throw ParameterError("precomputation half-width must be 2 or 4");
    if (n % (2 * *l_precomp) != 0) throw ParameterError("n must be divisible by 2l for precomputation");
  }
}

QuadSystem::QuadSystem(QuadParams params, std::vector<QuadWord> columns)
    : params_(params), words_(params.words_per_column()), columns_(std::move(columns)) {
  params_.validate();
  if (columns_.size() != params_.column_count() * words_) {
    throw ParameterError("coefficient matrix has the wrong size");
  }
  const std::size_t used = params_.polynomials() % kQuadWordBits;
  if (used != 0) {
    const QuadWord pad_mask = static_cast<QuadWord>(~((QuadWord{1} << used) - 1));
    for (std::size_t c = 0; c < params_.column_count(); ++c) {
      if ((columns_[c * words_ + words_ - 1] & pad_mask) != 0) {
        throw ParameterError("coefficient column has nonzero padding bits");
      }
    }
  }
}

QuadSystem QuadSystem::zero(QuadParams params) {
  params.validate();
  return QuadSystem(params, std::vector<QuadWord>(params.column_count() * params.words_per_column(), 0));
}

QuadKey quad_keygen(const QuadParams& params, std::uint64_t seed) {
  params.validate();
  SplitMix64 rng(seed);
  BitReader bits(rng);
  const std::size_t words = params.words_per_column();
  const std::size_t polys = params.polynomials();
  std::vector<QuadWord> columns(params.column_count() * words, 0);
  for (std::size_t c = 0; c < params.column_count(); ++c) {
    QuadWord* col = columns.data() + c * words;
    for (std::size_t h = 0; h < polys; ++h) {
      if (bits.next_bit()) col[h / kQuadWordBits] |= QuadWord{1} << (h % kQuadWordBits);
    }
  }
  QuadVector x0((params.n + kQuadWordBits - 1) / kQuadWordBits, 0);
  for (std::size_t i = 0; i < params.n; ++i) set_state_bit(x0, i, bits.next_bit());
  return {QuadSystem(params, std::move(columns)), std::move(x0)};
}

QuadVector evaluate_classical(const QuadSystem& sys, const QuadVector& x, XorCounter* counter) {
  require_state(sys, x);
  const std::size_t n = sys.params().n;
  const std::size_t words = sys.words_per_column();
  QuadVector acc(sys.column(QuadSystem::constant_index()).begin(), sys.column(QuadSystem::constant_index()).end());
  std::vector<std::size_t> set;
  set.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (state_bit(x, i)) set.push_back(i);
  }
  for (std::size_t a = 0; a < set.size(); ++a) {
    const std::size_t i = set[a];
    xor_into(acc, sys.column(sys.linear_index(i)));
    const std::size_t row = sys.quadratic_index(i, i + 1) - (i + 1);  // index of (i, j) is row + j
    for (std::size_t b = a + 1; b < set.size(); ++b) xor_into(acc, sys.column(row + set[b]));
  }
  const std::uint64_t s = set.size();
  count(counter, 1 + s + s * (s - 1) / 2, words);
  return acc;
}

QuadMemoryReport classical_memory(const QuadParams& params) {
  return {params.column_count(), params.column_count(), params.words_per_column()};
}

QuadPrecomp::QuadPrecomp(const QuadSystem& sys, std::size_t l)
    : l_(l), m_(0), words_(sys.words_per_column()) {
  const std::size_t n = sys.params().n;
  if (l == 0 || l > kMaxHalfWidth) throw ParameterError("precomputation half-width must be in [1, 4]");
  if (n % (2 * l) != 0) throw ParameterError("n must be divisible by 2l for precomputation");
  m_ = n / (2 * l);
  const std::size_t block_entries = std::size_t{1} << (2 * l);
  const std::size_t half_entries = std::size_t{1} << l;
  const std::size_t W = words_;

  block_tables_.assign(m_ * block_entries * W, 0);
  for (std::size_t b = 0; b < m_; ++b) {
    const std::size_t base = b * 2 * l;
    QuadWord* table = block_tables_.data() + b * block_entries * W;
    for (std::size_t s = 1; s < block_entries; ++s) {
      const std::size_t t = static_cast<std::size_t>(std::countr_zero(s));
      const std::size_t rest = s & (s - 1);
      std::span<QuadWord> entry(table + s * W, W);
      std::copy_n(table + rest * W, W, entry.begin());
      xor_into(entry, sys.column(sys.linear_index(base + t)));
      for (std::size_t r = rest; r != 0; r &= r - 1) {
        const std::size_t t2 = static_cast<std::size_t>(std::countr_zero(r));
        xor_into(entry, sys.column(sys.quadratic_index(base + t, base + t2)));
      }
    }
  }

  pair_tables_.assign(pairs() * 4 * block_entries * W, 0);
  std::vector<QuadWord> row(half_entries * W);
  for (std::size_t a = 0; a < m_; ++a) {
    for (std::size_t b = a + 1; b < m_; ++b) {
      for (std::size_t half = 0; half < 4; ++half) {
        const std::size_t i0 = a * 2 * l + (half >> 1) * l;
        const std::size_t j0 = b * 2 * l + (half & 1) * l;
        QuadWord* table = pair_tables_.data() + (pair_index(a, b) * 4 + half) * block_entries * W;
        for (std::size_t u = 1; u < half_entries; ++u) {
          const std::size_t i = i0 + static_cast<std::size_t>(std::countr_zero(u));
          // row[v] = XOR of a_{i, j} for the j selected by v
          std::fill(row.begin(), row.begin() + static_cast<std::ptrdiff_t>(W), 0);
          for (std::size_t v = 1; v < half_entries; ++v) {
            std::span<QuadWord> rv(row.data() + v * W, W);
            std::copy_n(row.data() + (v & (v - 1)) * W, W, rv.begin());
            xor_into(rv, sys.column(sys.quadratic_index(i, j0 + static_cast<std::size_t>(std::countr_zero(v)))));
          }
          const std::size_t prev = u & (u - 1);
          for (std::size_t v = 0; v < half_entries; ++v) {
            std::span<QuadWord> entry(table + (u * half_entries + v) * W, W);
            std::copy_n(table + (prev * half_entries + v) * W, W, entry.begin());
            xor_into(entry, std::span<const QuadWord>(row.data() + v * W, W));
          }
        }
      }
    }
  }
}

std::span<const QuadWord> QuadPrecomp::block_entry(std::size_t block, std::size_t assignment) const noexcept {
  const std::size_t entries = std::size_t{1} << (2 * l_);
  return {block_tables_.data() + (block * entries + assignment) * words_, words_};
}

std::span<const QuadWord> QuadPrecomp::pair_entry(std::size_t pair, std::size_t half, std::size_t u,
                                                  std::size_t v) const noexcept {
  const std::size_t entries = std::size_t{1} << (2 * l_);
  return {pair_tables_.data() + ((pair * 4 + half) * entries + (u << l_) + v) * words_, words_};
}

QuadMemoryReport QuadPrecomp::memory() const noexcept {
  const std::uint64_t block_entries = std::uint64_t{1} << (2 * l_);
  const std::uint64_t half_nonzero = (std::uint64_t{1} << l_) - 1;
  QuadMemoryReport report;
  report.columns_stored = m_ * block_entries + pairs() * 4 * block_entries;
  report.columns_nonzero = m_ * (block_entries - 1) + pairs() * 4 * half_nonzero * half_nonzero;
  report.words_per_column = words_;
  return report;
}

QuadVector evaluate_precomp(const QuadSystem& sys, const QuadPrecomp& pre, const QuadVector& x,
                            XorCounter* counter) {
  require_state(sys, x);
  if (pre.words_per_column() != sys.words_per_column() || pre.blocks() * 2 * pre.half_width() != sys.params().n) {
    throw ParameterError("precomputation tables do not match the system");
  }
  const std::size_t l = pre.half_width();
  const std::size_t m = pre.blocks();
  QuadVector acc(sys.column(QuadSystem::constant_index()).begin(), sys.column(QuadSystem::constant_index()).end());

  // Half-block assignments, two per block.
  std::size_t halves[2 * 64 * 4];
  std::vector<std::size_t> heap_halves;
  std::size_t* h = halves;
  if (2 * m > std::size(halves)) {
    heap_halves.resize(2 * m);
    h = heap_halves.data();
  }
  for (std::size_t b = 0; b < 2 * m; ++b) h[b] = extract_bits(x, b * l, l);

  for (std::size_t b = 0; b < m; ++b) xor_into(acc, pre.block_entry(b, h[2 * b] | (h[2 * b + 1] << l)));
  std::size_t pair = 0;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b, ++pair) {
      xor_into(acc, pre.pair_entry(pair, 0, h[2 * a], h[2 * b]));
      xor_into(acc, pre.pair_entry(pair, 1, h[2 * a], h[2 * b + 1]));
      xor_into(acc, pre.pair_entry(pair, 2, h[2 * a + 1], h[2 * b]));
      xor_into(acc, pre.pair_entry(pair, 3, h[2 * a + 1], h[2 * b + 1]));
    }
  }
  count(counter, pre.lookups_per_evaluation(), sys.words_per_column());
  return acc;
}

std::string QuadEvaluator::name() const {
  return pre_ == nullptr ? "classical" : "l" + std::to_string(pre_->half_width());
}

BitString quad_iterate(const QuadSystem& sys, QuadState& state, const QuadEvaluator& eval, XorCounter* counter) {
  const QuadParams& p = sys.params();
  if (state.bits_emitted + p.output_bits() > state.cap) throw BudgetExhausted("QUAD output cap reached");
  const QuadVector y = eval(state.x, counter);
  QuadVector next(state.x.size(), 0);
  for (std::size_t i = 0; i < p.n; ++i) set_state_bit(next, i, state_bit(y, i));
  BitString out;
  for (std::size_t h = p.n; h < p.polynomials(); ++h) out.push_back(state_bit(y, h));
  state.x = std::move(next);
  state.bits_emitted += p.output_bits();
  return out;
}

BitString quad_generate(const QuadSystem& sys, QuadState& state, const QuadEvaluator& eval, std::uint64_t nbits) {
  if (nbits > state.cap - std::min(state.cap, state.bits_emitted)) {
    throw BudgetExhausted("QUAD output cap reached");
  }
  const std::uint64_t start = state.bits_emitted;
  const std::uint64_t saved_cap = state.cap;
  // The last block may overshoot nbits; only nbits count against the cap.
  state.cap = UINT64_MAX;
  BitString out;
  while (out.size() < nbits) out.append(quad_iterate(sys, state, eval));
  state.cap = saved_cap;
  out.truncate(nbits);
  state.bits_emitted = start + nbits;
  return out;
}

double xor_cost_estimate(const QuadParams& params, std::size_t l, std::size_t word_bits) {
  const double n = static_cast<double>(params.n);
  const double d = static_cast<double>(word_bits);
  if (l == 0) return (n + 0.5 * (n * (n - 1) / 2)) / d;
  const double m = n / (2.0 * static_cast<double>(l));
  return 2.0 * (m + 4.0 * (m * (m - 1) / 2)) / d;
}

bool state_bit(const QuadVector& x, std::size_t i) noexcept {
  return ((x[i / kQuadWordBits] >> (i % kQuadWordBits)) & 1U) != 0;
}

void set_state_bit(QuadVector& x, std::size_t i, bool value) noexcept {
  const QuadWord mask = QuadWord{1} << (i % kQuadWordBits);
  if (value) {
    x[i / kQuadWordBits] |= mask;
  } else {
    x[i / kQuadWordBits] &= static_cast<QuadWord>(~mask);
  }
}

std::string quad_state_to_hex(const QuadVector& x) {
  std::vector<Limb> limbs((x.size() * kQuadWordBits + kLimbBits - 1) / kLimbBits, 0);
  for (std::size_t w = 0; w < x.size(); ++w) {
    const std::size_t bit = w * kQuadWordBits;
    limbs[bit / kLimbBits] |= static_cast<Limb>(x[w]) << (bit % kLimbBits);
  }
  return to_hex(Natural::from_limbs(std::move(limbs)));
}

QuadVector quad_state_from_hex(std::string_view hex, std::size_t n) {
  const Natural value = from_hex(hex);
  if (value.bit_length() > n) throw ParameterError("state has more than n bits");
  QuadVector x((n + kQuadWordBits - 1) / kQuadWordBits, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (value.bit(i)) set_state_bit(x, i, true);
  }
  return x;
}

namespace {

void put_u32(std::ostream& os, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  os.write(b, 4);
}

std::uint32_t get_u32(std::istream& is) {
  unsigned char b[4];
  if (!is.read(reinterpret_cast<char*>(b), 4)) throw FormatError("truncated QUAD header");
  return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
         (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace

void write_quad_system(std::ostream& os, const QuadSystem& sys) {
  const QuadParams& p = sys.params();
  os.write("QUAD", 4);
  os.put(static_cast<char>(kQuadFileVersion));
  put_u32(os, static_cast<std::uint32_t>(p.n));
  put_u32(os, static_cast<std::uint32_t>(p.k));
  put_u32(os, static_cast<std::uint32_t>(kQuadWordBits));
  std::vector<char> buf(sys.raw().size() * sizeof(QuadWord));
  std::size_t pos = 0;
  for (const QuadWord w : sys.raw()) {
    for (std::size_t i = 0; i < sizeof(QuadWord); ++i) buf[pos++] = static_cast<char>((w >> (8 * i)) & 0xFF);
  }
  os.write(buf.data(), static_cast<std::streamsize>(buf.size()));
  if (!os) throw FormatError("failed to write QUAD system");
}

QuadSystem read_quad_system(std::istream& is) {
  char magic[5] = {};
  if (!is.read(magic, 5) || std::string_view(magic, 4) != "QUAD") throw FormatError("not a QUAD system file");
  if (static_cast<std::uint8_t>(magic[4]) != kQuadFileVersion) throw FormatError("unsupported QUAD file version");
  QuadParams params;
  params.n = get_u32(is);
  params.k = get_u32(is);
  const std::uint32_t d = get_u32(is);
  if (d != 32 && d != 64) throw FormatError("unsupported QUAD word width");
  try {
    params.validate();
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid QUAD parameters: ") + e.what());
  }
  if (params.n > (1U << 16) || params.k > 64) throw FormatError("QUAD parameters out of range");

  const std::size_t file_bytes_per_col = (params.polynomials() + d - 1) / d * (d / 8);
  const std::size_t words = params.words_per_column();
  const std::size_t mem_bytes_per_col = words * sizeof(QuadWord);
  std::vector<QuadWord> columns(params.column_count() * words, 0);
  std::vector<unsigned char> buf(file_bytes_per_col);
  for (std::size_t c = 0; c < params.column_count(); ++c) {
    if (!is.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()))) {
      throw FormatError("truncated QUAD coefficient data");
    }
    for (std::size_t byte = 0; byte < file_bytes_per_col; ++byte) {
      const std::size_t first_bit = byte * 8;
      if (first_bit >= params.polynomials()) {
        if (buf[byte] != 0) throw FormatError("nonzero padding in QUAD column");
        continue;
      }
      if (byte >= mem_bytes_per_col) throw FormatError("QUAD column wider than expected");
      columns[c * words + byte / sizeof(QuadWord)] |= static_cast<QuadWord>(buf[byte])
                                                      << (8 * (byte % sizeof(QuadWord)));
    }
  }
  if (is.peek() != std::char_traits<char>::eof()) throw FormatError("trailing bytes after QUAD system");
  try {
    return QuadSystem(params, std::move(columns));
  } catch (const ParameterError& e) {
    throw FormatError(std::string("invalid QUAD system: ") + e.what());
  }
}

}  // namespace prbg
