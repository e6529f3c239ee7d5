#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prbg/bignum.hpp"
#include "prbg/modred.hpp"
#include "prbg/quad.hpp"
#include "prbg/rsaprg.hpp"

namespace prbg {

/// One measurement row. elapsed_ns covers `repetitions` operations; when one
/// pass is shorter than the minimum measured region it is repeated and the
/// average pass time is stored, so every other column is seed-determined.
struct BenchRecord {
  std::string operation;
  std::string variant;
  std::size_t size_bits = 0;
  std::uint64_t repetitions = 0;
  std::uint64_t elapsed_ns = 0;
  std::optional<double> throughput_mbit_s;
  std::optional<std::string> leaf_muls;      // MulCounter::to_string() of one operation
  std::optional<std::uint64_t> xor_word_count;  // over all repetitions

  double ns_per_op() const noexcept {
    return repetitions == 0 ? 0.0 : static_cast<double>(elapsed_ns) / static_cast<double>(repetitions);
  }
};

inline constexpr std::uint64_t kMinMeasuredNs = 10'000'000;

// bits_per_op * ops / elapsed seconds / 10^6.
double throughput_mbit_s(double bits_per_op, std::uint64_t ops, double elapsed_ns);

// Operands, moduli and inputs come from splitmix64 streams derived from
// rng_seed and the size only, so every variant of a size sees the same data.
// Results are checked against the reference computation before timing;
// a mismatch throws std::logic_error. reps == 0 throws ParameterError.
std::vector<BenchRecord> bench_mul(const std::vector<std::size_t>& n_list, const std::vector<MulAlgorithm>& algs,
                                   std::uint64_t reps, std::uint64_t rng_seed);
std::vector<BenchRecord> bench_modred(const std::vector<std::size_t>& n_list,
                                      const std::vector<ReductionMethod>& methods, std::uint64_t reps,
                                      std::uint64_t rng_seed, MulAlgorithm alg = MulAlgorithm::karatsuba(1));
// One basic iteration (x <- x^e mod N plus output) per repetition.
std::vector<BenchRecord> bench_rsaprg(const RsaprgParams& params, const std::vector<ReductionMethod>& methods,
                                      std::uint64_t reps, std::uint64_t rng_seed,
                                      MulAlgorithm alg = MulAlgorithm::karatsuba(1));
// variants: "classical", "l2", "l4". Precomputed variants add a
// "quad_precomp" record holding the table build time.
std::vector<BenchRecord> bench_quad(std::size_t n, std::size_t k, const std::vector<std::string>& variants,
                                    std::uint64_t iters, std::uint64_t rng_seed);

// Random odd modulus of exactly n bits with the top two bits set.
Natural bench_modulus(std::size_t n, std::uint64_t rng_seed);

enum class BenchFormat { Csv, Markdown, Json };
BenchFormat parse_bench_format(std::string_view name);  // ParameterError
std::string emit(const std::vector<BenchRecord>& records, BenchFormat format);
inline constexpr std::string_view kBenchCsvHeader =
    "operation,variant,size_bits,repetitions,elapsed_ns,ns_per_op,throughput_mbit_s,leaf_muls,xor_words";

/// Observed order of variants (fastest first) for one operation and size,
/// next to an expected order.
struct OrderingReport {
  std::string operation;
  std::size_t size_bits = 0;
  std::vector<std::string> observed;
  std::vector<std::string> expected;
  bool matches = false;
};
OrderingReport ordering_report(const std::vector<BenchRecord>& records, const std::string& operation,
                               std::size_t size_bits, const std::vector<std::string>& expected_fastest_first);

}  // namespace prbg
