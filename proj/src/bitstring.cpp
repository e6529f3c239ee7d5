#include "prbg/bitstring.hpp"

#include <algorithm>
#include <stdexcept>

namespace prbg {

BitString BitString::from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits) {
  if (nbits > bytes.size() * 8) throw std::invalid_argument("bit count exceeds byte span");
  BitString out;
  out.bytes_.assign(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>((nbits + 7) / 8));
  out.size_ = nbits;
  if (nbits % 8 != 0) out.bytes_.back() &= static_cast<std::uint8_t>((1U << (nbits % 8)) - 1);
  return out;
}

void BitString::push_back(bool bit) {
  if (size_ % 8 == 0) bytes_.push_back(0);
  if (bit) bytes_.back() |= static_cast<std::uint8_t>(1U << (size_ % 8));
  ++size_;
}

void BitString::append_bits(std::uint64_t value, unsigned count) {
  if (count < 64) value &= (std::uint64_t{1} << count) - 1;
  while (count > 0) {
    const unsigned offset = size_ % 8;
    if (offset == 0) bytes_.push_back(0);
    const unsigned take = std::min(count, 8 - offset);
    bytes_.back() |= static_cast<std::uint8_t>((value & ((1U << take) - 1)) << offset);
    value >>= take;
    count -= take;
    size_ += take;
  }
}

void BitString::append(const BitString& other) {
  if (size_ % 8 == 0) {
    bytes_.insert(bytes_.end(), other.bytes_.begin(), other.bytes_.end());
    size_ += other.size_;
    return;
  }
  std::size_t remaining = other.size_;
  for (std::size_t i = 0; remaining > 0; ++i) {
    const unsigned take = remaining >= 8 ? 8 : static_cast<unsigned>(remaining);
    append_bits(other.bytes_[i], take);
    remaining -= take;
  }
}

void BitString::truncate(std::size_t nbits) {
  if (nbits >= size_) return;
  size_ = nbits;
  bytes_.resize((nbits + 7) / 8);
  if (nbits % 8 != 0) bytes_.back() &= static_cast<std::uint8_t>((1U << (nbits % 8)) - 1);
}

std::string BitString::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes_.size() * 2);
  for (const auto b : bytes_) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xF]);
  }
  return out;
}

}  // namespace prbg
