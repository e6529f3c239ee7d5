#include "prbg/expander.hpp"

#include <cmath>

#include "prbg/errors.hpp"

namespace prbg {

ExpanderSpec ExpanderSpec::identity(std::size_t bits) {
  return {bits, bits, [](const BitString& s) { return s; }};
}

void ExpanderSpec::validate() const {
  if (in_bits == 0 || out_bits < in_bits) throw ParameterError("expander needs 0 < in_bits <= out_bits");
  if (!transform) throw ParameterError("expander has no transform");
}

BitString expand(const ExpanderSpec& spec, const BitString& block) {
  spec.validate();
  if (block.size() != spec.in_bits) throw ParameterError("expander input has the wrong length");
  BitString out = spec.transform(block);
  if (out.size() != spec.out_bits) throw ParameterError("expander transform returned the wrong length");
  return out;
}

BitString expand_stream(const ExpanderSpec& spec, const BitString& stream) {
  spec.validate();
  if (stream.size() % spec.in_bits != 0) throw ParameterError("stream is not a whole number of blocks");
  BitString out;
  for (std::size_t pos = 0; pos < stream.size(); pos += spec.in_bits) {
    BitString block;
    for (std::size_t i = 0; i < spec.in_bits; ++i) block.push_back(stream[pos + i]);
    out.append(expand(spec, block));
  }
  return out;
}

double modified_throughput(double base_ns_per_iter, double base_bits_per_iter, double w_ns_per_eval,
                           const ExpanderSpec& spec, int applications) {
  spec.validate();
  if (applications != 1 && applications != 2) throw ParameterError("applications must be 1 or 2");
  if (!(base_ns_per_iter > 0) || !(base_bits_per_iter > 0) || !(w_ns_per_eval >= 0)) {
    throw ParameterError("stage costs must be positive");
  }
  double bits = base_bits_per_iter;
  double ns = base_ns_per_iter;
  for (int j = 0; j < applications; ++j) {
    ns += bits / static_cast<double>(spec.in_bits) * w_ns_per_eval;
    bits *= spec.ratio();
  }
  // bits per ns = Gbit/s
  return bits / ns * 1e3;
}

}  // namespace prbg
