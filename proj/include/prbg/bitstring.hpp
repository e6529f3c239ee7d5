#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace prbg {

/// Growable bit string. Bit i lives in byte i / 8 at position i % 8, so the
/// byte vector is exactly the raw keystream format (LSB-first within a byte).
class BitString {
 public:
  BitString() = default;
  static BitString from_bytes(std::span<const std::uint8_t> bytes, std::size_t nbits);

  std::size_t size() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  bool operator[](std::size_t i) const noexcept { return ((bytes_[i / 8] >> (i % 8)) & 1U) != 0; }

  void push_back(bool bit);
  // Appends the low `count` bits of `value`, least significant first.
  void append_bits(std::uint64_t value, unsigned count);
  void append(const BitString& other);
  void truncate(std::size_t nbits);

  // Unused high bits of the last byte are zero.
  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  // Lowercase hex of bytes() in order.
  std::string to_hex() const;

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t size_ = 0;
};

}  // namespace prbg
