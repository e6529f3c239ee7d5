#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "json.hpp"
#include "prbg/bench.hpp"
#include "prbg/errors.hpp"

using namespace prbg;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

// Every column except the three timing-derived ones.
std::string data_columns(const std::vector<BenchRecord>& recs) {
  std::string out;
  for (const auto& r : recs) {
    out += r.operation + "," + r.variant + "," + std::to_string(r.size_bits) + "," + std::to_string(r.repetitions) +
           "," + r.leaf_muls.value_or("") + "," + (r.xor_word_count ? std::to_string(*r.xor_word_count) : "") + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("throughput arithmetic") {
  CHECK(throughput_mbit_s(2196, 1000, 533e6) == doctest::Approx(4.12).epsilon(0.05 / 4.12));
  CHECK(throughput_mbit_s(160, 10000, 223e6) == doctest::Approx(7.17).epsilon(0.1 / 7.17));
  CHECK_THROWS_AS(throughput_mbit_s(1, 1, 0), ParameterError);
}

TEST_CASE("emit") {
  CHECK(emit({}, BenchFormat::Csv) == std::string(kBenchCsvHeader) + "\n");
  BenchRecord r;
  r.operation = "quad";
  r.variant = "l2";
  r.size_bits = 160;
  r.repetitions = 4;
  r.elapsed_ns = 10;
  r.throughput_mbit_s = 64000.0;
  r.xor_word_count = 12;
  const auto csv = lines(emit({r}, BenchFormat::Csv));
  REQUIRE(csv.size() == 2);
  CHECK(csv[1] == "quad,l2,160,4,10,2.500,64000.000,,12");
  const auto j = nlohmann::json::parse(emit({r, r}, BenchFormat::Json));
  CHECK(j.size() == 2);
  CHECK(j[0].at("xor_words").get<int>() == 12);
  CHECK(j[0].at("leaf_muls").is_null());
  const std::string md = emit({r}, BenchFormat::Markdown);
  CHECK(md.find("Time in ms to compute 4 basic iterations of QUAD (n = 160)") != std::string::npos);
  CHECK(md.find("| l2 |") != std::string::npos);
  CHECK(parse_bench_format("markdown") == BenchFormat::Markdown);
  CHECK_THROWS_AS(parse_bench_format("xml"), ParameterError);
}

TEST_CASE("multiplication bench") {
  const auto recs = bench_mul({384, 768}, {MulAlgorithm::schoolbook(), MulAlgorithm::karatsuba(1)}, 3, 1);
  REQUIRE(recs.size() == 4);
  // two 3-limb halves plus the middle product, whose sums may carry into a 4th limb
  CHECK(recs[1].leaf_muls == std::string("3x3=2;4x3=1"));
  for (const auto& r : recs) CHECK(r.elapsed_ns > 0);
  CHECK(data_columns(recs) == data_columns(bench_mul({384, 768}, {MulAlgorithm::schoolbook(), MulAlgorithm::karatsuba(1)}, 3, 1)));
  CHECK_THROWS_AS(bench_mul({384}, {MulAlgorithm::schoolbook()}, 0, 1), ParameterError);
}

TEST_CASE("reduction bench") {
  std::vector<ReductionMethod> all(kAllReductionMethods.begin(), kAllReductionMethods.end());
  const auto recs = bench_modred({768}, all, 5, 2);
  REQUIRE(recs.size() == 4);
  CHECK_FALSE(recs[0].leaf_muls->size());
  CHECK(data_columns(recs) == data_columns(bench_modred({768}, all, 5, 2)));
  CHECK_THROWS_AS(bench_modred({770}, all, 5, 2), ParameterError);
  const auto rep = ordering_report(recs, "modred", 768, {"method2", "method1", "barrett", "classical"});
  CHECK(rep.observed.size() == 4);
}

TEST_CASE("rsaprg bench") {
  RsaprgParams p{96, 9, 40, 1000};
  const auto recs = bench_rsaprg(p, {ReductionMethod::Classical, ReductionMethod::Method2}, 4, 3);
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) {
    REQUIRE(r.throughput_mbit_s);
    CHECK(*r.throughput_mbit_s == doctest::Approx(throughput_mbit_s(40, 4, static_cast<double>(r.elapsed_ns))));
  }
  CHECK(data_columns(recs) == data_columns(bench_rsaprg(p, {ReductionMethod::Classical, ReductionMethod::Method2}, 4, 3)));
}

TEST_CASE("quad bench") {
  const auto recs = bench_quad(32, 2, {"classical", "l2", "l4"}, 10, 4);
  REQUIRE(recs.size() == 5);
  CHECK(recs[1].operation == "quad_precomp");
  CHECK(recs[1].repetitions == 1);
  // precomputed variants cost a fixed number of lookups per iteration
  CHECK(*recs[2].xor_word_count == 10 * (1 + 8 + 4 * 28) * ((64 + kQuadWordBits - 1) / kQuadWordBits));
  CHECK(data_columns(recs) == data_columns(bench_quad(32, 2, {"classical", "l2", "l4"}, 10, 4)));
  CHECK_THROWS_AS(bench_quad(32, 2, {"classical"}, 0, 4), ParameterError);
  CHECK_THROWS_AS(bench_quad(32, 2, {"l3"}, 1, 4), ParameterError);
}
