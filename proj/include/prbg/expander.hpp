#pragma once

#include <cstddef>
#include <functional>

#include "prbg/bitstring.hpp"

namespace prbg {

/// Post-processing stage w: every in_bits-bit generator block becomes an
/// out_bits-bit block. The default is the identity on `in_bits` bits.
struct ExpanderSpec {
  std::size_t in_bits = 0;
  std::size_t out_bits = 0;
  std::function<BitString(const BitString&)> transform;

  static ExpanderSpec identity(std::size_t bits);
  void validate() const;  // ParameterError unless 0 < in_bits <= out_bits and transform is set
  double ratio() const noexcept { return static_cast<double>(out_bits) / static_cast<double>(in_bits); }
};

// ParameterError if |block| != in_bits or the transform returns the wrong length.
BitString expand(const ExpanderSpec& spec, const BitString& block);

// Expands a whole stream block by block; a trailing partial block is an error.
BitString expand_stream(const ExpanderSpec& spec, const BitString& stream);

/// Throughput in Mbit/s of a generator followed by `applications` (1 or 2)
/// chained passes of w. Stages run strictly one after another: per generator
/// iteration the bits entering pass j cost (bits / in_bits) evaluations of w,
/// fractional blocks allowed, and every pass multiplies the bit count by
/// out_bits / in_bits.
double modified_throughput(double base_ns_per_iter, double base_bits_per_iter, double w_ns_per_eval,
                           const ExpanderSpec& spec, int applications);

}  // namespace prbg
