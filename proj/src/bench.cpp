#include "prbg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "prbg/errors.hpp"
#include "prbg/primes.hpp"
#include "prbg/random.hpp"

namespace prbg {

namespace {

using Clock = std::chrono::steady_clock;

// Runs `pass` until kMinMeasuredNs has elapsed and returns the mean pass time.
template <class Pass>
std::uint64_t time_passes(Pass&& pass) {
  std::uint64_t total = 0;
  std::uint64_t passes = 0;
  do {
    const auto t0 = Clock::now();
    pass();
    const auto t1 = Clock::now();
    total += static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    ++passes;
  } while (total < kMinMeasuredNs);
  return std::max<std::uint64_t>(1, total / passes);
}

std::uint64_t size_seed(std::uint64_t seed, std::size_t n) {
  SplitMix64 mix(seed ^ (static_cast<std::uint64_t>(n) * 0x9E3779B97F4A7C15ULL));
  return mix.next();
}

void require_reps(std::uint64_t reps) {
  if (reps == 0) throw ParameterError("repetitions must be at least 1");
}

void check(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("benchmark oracle mismatch: " + what);
}

BenchRecord make_record(std::string operation, std::string variant, std::size_t size_bits, std::uint64_t reps,
                        std::uint64_t elapsed_ns) {
  BenchRecord rec;
  rec.operation = std::move(operation);
  rec.variant = std::move(variant);
  rec.size_bits = size_bits;
  rec.repetitions = reps;
  rec.elapsed_ns = elapsed_ns;
  return rec;
}

// Keeps the optimizer from discarding timed results.
volatile std::uint64_t g_sink = 0;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

}  // namespace

double throughput_mbit_s(double bits_per_op, std::uint64_t ops, double elapsed_ns) {
  if (!(elapsed_ns > 0)) throw ParameterError("elapsed time must be positive");
  return bits_per_op * static_cast<double>(ops) / (elapsed_ns * 1e-9) / 1e6;
}

Natural bench_modulus(std::size_t n, std::uint64_t rng_seed) {
  if (n < 3) throw ParameterError("modulus needs at least 3 bits");
  SplitMix64 rng(rng_seed);
  Natural m = random_exact_bits(rng, n);
  if (!m.bit(n - 2)) m = add(m, Natural::power_of_two(n - 2));
  if (!m.is_odd()) m = add(m, Natural(1));
  return m;
}

std::vector<BenchRecord> bench_mul(const std::vector<std::size_t>& n_list, const std::vector<MulAlgorithm>& algs,
                                   std::uint64_t reps, std::uint64_t rng_seed) {
  require_reps(reps);
  std::vector<BenchRecord> out;
  for (const std::size_t n : n_list) {
    if (n == 0) throw ParameterError("operand size must be positive");
    SplitMix64 rng(size_seed(rng_seed, n));
    std::vector<Natural> a(reps), b(reps);
    for (std::uint64_t i = 0; i < reps; ++i) {
      a[i] = random_exact_bits(rng, n);
      b[i] = random_exact_bits(rng, n);
    }
    const Natural reference = mul(a[0], b[0]);
    for (const MulAlgorithm alg : algs) {
      MulCounter counter;
      check(mul(a[0], b[0], alg, &counter) == reference, alg.name());
      const std::uint64_t ns = time_passes([&] {
        for (std::uint64_t i = 0; i < reps; ++i) g_sink = g_sink + mul(a[i], b[i], alg).low_u64();
      });
      BenchRecord rec = make_record("mul", alg.name(), n, reps, ns);
      rec.leaf_muls = counter.to_string();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<BenchRecord> bench_modred(const std::vector<std::size_t>& n_list,
                                      const std::vector<ReductionMethod>& methods, std::uint64_t reps,
                                      std::uint64_t rng_seed, MulAlgorithm alg) {
  require_reps(reps);
  std::vector<BenchRecord> out;
  for (const std::size_t n : n_list) {
    if (n % 6 != 0 || n < 12) throw ParameterError("reduction size must be a multiple of 6, at least 12");
    const std::uint64_t seed = size_seed(rng_seed, n);
    const ModulusContext ctx(bench_modulus(n, seed), alg);
    SplitMix64 rng(seed + 1);
    std::vector<Natural> xs(reps);
    for (auto& x : xs) x = random_natural(rng, 2 * n);
    std::vector<Natural> expected;
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(reps, 16); ++i) {
      expected.push_back(reduce_classical(xs[i], ctx));
    }
    for (const ReductionMethod method : methods) {
      for (std::size_t i = 0; i < expected.size(); ++i) check(reduce(xs[i], ctx, method) == expected[i], to_string(method));
      ReductionStats stats;
      reduce(xs[0], ctx, method, &stats);
      const std::uint64_t ns = time_passes([&] {
        for (const auto& x : xs) g_sink = g_sink + reduce(x, ctx, method).low_u64();
      });
      BenchRecord rec = make_record("modred", to_string(method), n, reps, ns);
      rec.leaf_muls = stats.muls.to_string();
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<BenchRecord> bench_rsaprg(const RsaprgParams& params, const std::vector<ReductionMethod>& methods,
                                      std::uint64_t reps, std::uint64_t rng_seed, MulAlgorithm alg) {
  require_reps(reps);
  params.validate();
  RsaprgParams unbounded = params;
  unbounded.l = UINT64_MAX;
  const std::uint64_t seed = size_seed(rng_seed, params.n);
  auto ctx = std::make_shared<const ModulusContext>(bench_modulus(params.n, seed), alg);
  SplitMix64 rng(seed + 1);
  const Natural x0 = random_natural(rng, params.n + 64);
  const Natural x0_reduced = reduce_classical(x0, *ctx);
  const Natural expected = modpow(x0_reduced, Natural(params.e), ctx->modulus());

  std::vector<BenchRecord> out;
  for (const ReductionMethod method : methods) {
    Rsaprg probe(ctx, unbounded, x0, method);
    probe.set_instrumented(true);
    probe.iterate();
    check(probe.state() == expected, "rsaprg " + to_string(method));

    Rsaprg gen(ctx, unbounded, x0, method);
    const std::uint64_t ns = time_passes([&] {
      for (std::uint64_t i = 0; i < reps; ++i) g_sink = g_sink + gen.iterate().size();
    });
    BenchRecord rec = make_record("rsaprg", to_string(method), params.n, reps, ns);
    rec.throughput_mbit_s = throughput_mbit_s(static_cast<double>(params.r), reps, static_cast<double>(ns));
    rec.leaf_muls = probe.reduction_stats().muls.to_string();
    out.push_back(std::move(rec));
  }
  return out;
}

std::vector<BenchRecord> bench_quad(std::size_t n, std::size_t k, const std::vector<std::string>& variants,
                                    std::uint64_t iters, std::uint64_t rng_seed) {
  require_reps(iters);
  QuadParams params{n, k, std::nullopt};
  params.validate();
  const QuadKey key = quad_keygen(params, size_seed(rng_seed, n));
  const QuadEvaluator classical(key.system);
  const std::uint64_t check_iters = std::min<std::uint64_t>(iters, 64);
  QuadState reference_state{key.x0, 0, UINT64_MAX};
  const BitString reference = quad_generate(key.system, reference_state, classical, check_iters * params.output_bits());

  std::vector<BenchRecord> out;
  for (const auto& variant : variants) {
    std::unique_ptr<QuadPrecomp> pre;
    if (variant == "l2" || variant == "l4") {
      const std::size_t l = variant == "l2" ? 2 : 4;
      const auto t0 = Clock::now();
      pre = std::make_unique<QuadPrecomp>(key.system, l);
      const auto t1 = Clock::now();
      BenchRecord build = make_record("quad_precomp", variant, n, 1,
                        std::max<std::uint64_t>(1, static_cast<std::uint64_t>(
                            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count())));
      out.push_back(std::move(build));
    } else if (variant != "classical") {
      throw ParameterError("unknown QUAD variant: " + variant);
    }
    const QuadEvaluator eval = pre ? QuadEvaluator(key.system, *pre) : QuadEvaluator(key.system);

    QuadState probe{key.x0, 0, UINT64_MAX};
    check(quad_generate(key.system, probe, eval, check_iters * params.output_bits()) == reference, variant);
    XorCounter counter;
    QuadState counted{key.x0, 0, UINT64_MAX};
    for (std::uint64_t i = 0; i < iters; ++i) quad_iterate(key.system, counted, eval, &counter);

    QuadState state{key.x0, 0, UINT64_MAX};
    const std::uint64_t ns = time_passes([&] {
      for (std::uint64_t i = 0; i < iters; ++i) g_sink = g_sink + quad_iterate(key.system, state, eval).size();
    });
    BenchRecord rec = make_record("quad", variant, n, iters, ns);
    rec.throughput_mbit_s = throughput_mbit_s(static_cast<double>(params.output_bits()), iters, static_cast<double>(ns));
    rec.xor_word_count = counter.word_xors;
    out.push_back(std::move(rec));
  }
  return out;
}

BenchFormat parse_bench_format(std::string_view name) {
  if (name == "csv") return BenchFormat::Csv;
  if (name == "markdown") return BenchFormat::Markdown;
  if (name == "json") return BenchFormat::Json;
  throw ParameterError("unknown output format: " + std::string(name));
}

namespace {

std::string csv(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  os << kBenchCsvHeader << "\n";
  for (const auto& r : records) {
    os << r.operation << ',' << r.variant << ',' << r.size_bits << ',' << r.repetitions << ',' << r.elapsed_ns << ','
       << fmt(r.ns_per_op()) << ',' << (r.throughput_mbit_s ? fmt(*r.throughput_mbit_s) : "") << ','
       << r.leaf_muls.value_or("") << ',' << (r.xor_word_count ? std::to_string(*r.xor_word_count) : "") << "\n";
  }
  return os.str();
}

std::string describe(const BenchRecord& r) {
  const std::string reps = std::to_string(r.repetitions);
  if (r.operation == "mul") return reps + " multiplications";
  if (r.operation == "modred") return reps + " modular reductions";
  if (r.operation == "rsaprg") return reps + " basic iterations of RSAPRG";
  if (r.operation == "quad") return reps + " basic iterations of QUAD";
  if (r.operation == "quad_precomp") return "the precomputation tables of QUAD";
  return reps + " " + r.operation;
}

std::string markdown(const std::vector<BenchRecord>& records) {
  std::ostringstream os;
  std::string current;
  for (const auto& r : records) {
    const std::string title = "Time in ms to compute " + describe(r) + " (n = " + std::to_string(r.size_bits) + ")";
    if (title != current) {
      if (!current.empty()) os << "\n";
      current = title;
      os << title << "\n\n"
         << "| variant | ms | ns/op | Mbit/s | leaf muls | xor words |\n"
         << "|---|---:|---:|---:|---|---:|\n";
    }
    os << "| " << r.variant << " | " << fmt(static_cast<double>(r.elapsed_ns) / 1e6) << " | " << fmt(r.ns_per_op())
       << " | " << (r.throughput_mbit_s ? fmt(*r.throughput_mbit_s) : "") << " | " << r.leaf_muls.value_or("")
       << " | " << (r.xor_word_count ? std::to_string(*r.xor_word_count) : "") << " |\n";
  }
  return os.str();
}

std::string json(const std::vector<BenchRecord>& records) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["operation"] = r.operation;
    j["variant"] = r.variant;
    j["size_bits"] = r.size_bits;
    j["repetitions"] = r.repetitions;
    j["elapsed_ns"] = r.elapsed_ns;
    j["ns_per_op"] = r.ns_per_op();
    j["throughput_mbit_s"] = r.throughput_mbit_s ? nlohmann::ordered_json(*r.throughput_mbit_s) : nullptr;
    j["leaf_muls"] = r.leaf_muls ? nlohmann::ordered_json(*r.leaf_muls) : nullptr;
    j["xor_words"] = r.xor_word_count ? nlohmann::ordered_json(*r.xor_word_count) : nullptr;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

}  // namespace

std::string emit(const std::vector<BenchRecord>& records, BenchFormat format) {
  switch (format) {
    case BenchFormat::Csv:
      return csv(records);
    case BenchFormat::Markdown:
      return markdown(records);
    case BenchFormat::Json:
      return json(records);
  }
  throw ParameterError("unknown output format");
}

OrderingReport ordering_report(const std::vector<BenchRecord>& records, const std::string& operation,
                               std::size_t size_bits, const std::vector<std::string>& expected_fastest_first) {
  OrderingReport report;
  report.operation = operation;
  report.size_bits = size_bits;
  report.expected = expected_fastest_first;
  std::vector<const BenchRecord*> rows;
  for (const auto& r : records) {
    if (r.operation == operation && r.size_bits == size_bits) rows.push_back(&r);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRecord* a, const BenchRecord* b) { return a->ns_per_op() < b->ns_per_op(); });
  for (const auto* r : rows) {
    if (std::find(expected_fastest_first.begin(), expected_fastest_first.end(), r->variant) !=
        expected_fastest_first.end()) {
      report.observed.push_back(r->variant);
    }
  }
  report.matches = report.observed == report.expected;
  return report;
}

}  // namespace prbg
