#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "json.hpp"
#include "prbg/bench.hpp"
#include "prbg/cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = prbg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path temp_dir() {
  const fs::path dir = fs::temp_directory_path() / ("prbg_cli_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string trim(const std::string& s) { return s.substr(0, s.find_last_not_of('\n') + 1); }

}  // namespace

TEST_CASE("rsaprg keygen and stream") {
  const fs::path dir = temp_dir();
  const std::string key = (dir / "key.json").string();
  auto r = run({"rsaprg", "keygen", "--bits", "96", "--e", "9", "--r", "20", "--seed", "42", "--out", key});
  REQUIRE(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream f(key);
  const auto j = nlohmann::json::parse(f);
  CHECK(j.at("n").get<int>() == 96);
  CHECK_FALSE(j.contains("p"));

  const auto priv = run({"rsaprg", "keygen", "--bits", "96", "--e", "9", "--r", "20", "--seed", "42", "--emit-private"});
  CHECK(nlohmann::json::parse(priv.out).contains("q"));

  std::string first;
  for (const char* m : {"classical", "barrett", "method1", "method2"}) {
    const auto s = run({"rsaprg", "stream", "--params", key, "--seed-x", "abcdef0123", "--nbits", "100", "--method", m});
    REQUIRE(s.code == 0);
    CHECK(trim(s.out).size() == 26);  // 13 bytes
    if (first.empty()) first = s.out;
    CHECK(s.out == first);
  }
  const auto raw = run({"rsaprg", "stream", "--params", key, "--seed-x", "abcdef0123", "--nbits", "100", "--format", "raw"});
  CHECK(raw.out.size() == 13);

  const auto deg = run({"rsaprg", "stream", "--params", key, "--seed-x", "1", "--nbits", "8"});
  CHECK(deg.code == 0);
  CHECK(deg.err.find("warning") != std::string::npos);
  CHECK(run({"rsaprg", "stream", "--params", key, "--seed-x", "XY", "--nbits", "8"}).code == 1);
  CHECK(run({"rsaprg", "stream", "--params", (dir / "missing.json").string(), "--seed-x", "1", "--nbits", "8"}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("rsaprg keygen needs r away from the recommended point") {
  CHECK(run({"rsaprg", "keygen", "--bits", "96", "--e", "9", "--seed", "1"}).code == 1);
  CHECK(run({"rsaprg", "keygen", "--bits", "100", "--e", "9", "--r", "20", "--seed", "1"}).code == 1);
  CHECK(run({"rsaprg", "keygen", "--bits", "96", "--seed", "1"}).code == 1);
}

TEST_CASE("quad keygen and stream") {
  const fs::path dir = temp_dir();
  const std::string sys = (dir / "sys.quad").string();
  const auto k = run({"quad", "keygen", "--n", "160", "--k", "2", "--seed", "7", "--out", sys});
  REQUIRE(k.code == 0);
  const std::string x0 = trim(k.out);
  std::string first;
  for (const char* v : {"classical", "l2", "l4"}) {
    const auto s = run({"quad", "stream", "--system", sys, "--x0", x0, "--nbits", "1024", "--variant", v, "--format", "hex"});
    REQUIRE(s.code == 0);
    CHECK(trim(s.out).size() == 256);
    if (first.empty()) first = s.out;
    CHECK(s.out == first);
  }
  const auto zero = run({"quad", "stream", "--system", sys, "--nbits", "16"});
  CHECK(zero.code == 0);
  CHECK(zero.err.find("warning") != std::string::npos);
  CHECK(run({"quad", "stream", "--system", sys, "--nbits", "16", "--variant", "l3"}).code == 1);
  CHECK(run({"quad", "keygen", "--n", "4", "--k", "2", "--seed", "7", "--out", sys}).code == 1);

  std::ofstream(dir / "junk.quad") << "nope";
  CHECK(run({"quad", "stream", "--system", (dir / "junk.quad").string(), "--nbits", "16"}).code == 2);
  fs::remove_all(dir);
}

TEST_CASE("bench output") {
  const auto r = run({"bench", "modred", "--n", "96", "--reps", "3", "--seed", "5"});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind(std::string(prbg::kBenchCsvHeader), 0) == 0);
  const auto j = run({"bench", "quad", "--n", "16", "--iters", "3", "--variant", "classical", "--format", "json"});
  REQUIRE(j.code == 0);
  CHECK(nlohmann::json::parse(j.out).size() == 1);
  const auto lists = run({"bench", "mul", "--n", "96,192", "--alg", "schoolbook,toom3", "--reps", "2", "--format", "json"});
  REQUIRE(lists.code == 0);
  CHECK(nlohmann::json::parse(lists.out).size() == 4);
  CHECK(run({"bench", "mul", "--reps", "0"}).code == 1);
  CHECK(run({"bench", "modred", "--n", "100", "--reps", "1"}).code == 1);
}

TEST_CASE("estimates") {
  const auto q = run({"estimate", "quad", "--k", "2", "--n", "160", "--format", "json"});
  REQUIRE(q.code == 0);
  CHECK(nlohmann::json::parse(q.out).at("D").get<int>() == 8);
  const auto r = run({"estimate", "rsaprg", "--n", "6144", "--e", "9", "--r", "2196", "--l", "4294967296"});
  CHECK(r.out.find("endorsed") != std::string::npos);
  CHECK(run({"estimate", "quad", "--k", "0.01", "--n", "160"}).code == 1);
}

TEST_CASE("usage errors and help") {
  CHECK(run({}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({"rsaprg", "stream", "--nbits", "5"}).code == 1);
  const auto h = run({"--help"});
  CHECK(h.code == 0);
  CHECK(h.out.find("rsaprg") != std::string::npos);
}
