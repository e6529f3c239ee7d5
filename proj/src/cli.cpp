#include "prbg/cli.hpp"

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "prbg/bench.hpp"
#include "prbg/errors.hpp"
#include "prbg/estimator.hpp"
#include "prbg/modred.hpp"
#include "prbg/quad.hpp"
#include "prbg/rsaprg.hpp"

namespace prbg::cli {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes to `path`, or to `out` when path is empty.
void write_output(const std::string& path, const std::string& data, std::ostream& out) {
  if (path.empty()) {
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path + " for writing");
  f.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!f) throw IoError("failed writing " + path);
}

std::string render_stream(const BitString& bits, const std::string& format) {
  if (format == "raw") return std::string(bits.bytes().begin(), bits.bytes().end());
  return bits.to_hex() + "\n";
}

const std::vector<std::string> kMethodNames = {"classical", "barrett", "method1", "method2"};
const std::vector<std::string> kVariantNames = {"classical", "l2", "l4"};
const std::vector<std::string> kAlgNames = {"schoolbook", "karatsuba1", "karatsuba2", "toom3"};

struct Options {
  // rsaprg keygen
  std::size_t bits = 6144;
  std::uint64_t e = 9;
  std::optional<std::size_t> r;
  std::optional<std::uint64_t> l;
  std::uint64_t seed = 0;
  std::string out_path;
  bool emit_private = false;
  // rsaprg stream
  std::string params_path;
  std::string seed_x;
  std::uint64_t nbits = 0;
  std::string method = "method2";
  std::string format = "hex";
  // quad
  std::size_t n = 160;
  std::size_t k = 2;
  std::string system_path;
  std::string x0;
  std::string variant = "classical";
  // bench
  std::vector<std::size_t> sizes;
  std::vector<std::string> algs;
  std::vector<std::string> methods;
  std::vector<std::string> variants;
  std::uint64_t reps = 1000;
  std::string alg = "karatsuba1";
  std::string bench_format = "csv";
  // estimate
  double kq = 2;
  std::string estimate_format = "text";
};

RsaprgParams params_for(std::size_t n, std::uint64_t e, std::optional<std::size_t> r, std::optional<std::uint64_t> l) {
  RsaprgParams p;
  p.n = n;
  p.e = e;
  if (r) {
    p.r = *r;
  } else if (n != RsaprgParams::recommended().n || e != RsaprgParams::recommended().e) {
    throw ParameterError("--r is required unless --bits 6144 --e 9");
  }
  if (l) p.l = *l;
  p.validate();
  return p;
}

int rsaprg_keygen_cmd(const Options& o, std::ostream& out) {
  const RsaprgParams params = params_for(o.bits, o.e, o.r, o.l);
  const RsaprgKey key = rsaprg_keygen(params.n, params.e, o.seed);
  write_output(o.out_path, rsaprg_params_to_json(params, key, o.emit_private), out);
  return kExitOk;
}

int rsaprg_stream_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  auto [params, key] = rsaprg_params_from_json(read_file(o.params_path));
  params.validate();
  auto ctx = std::make_shared<const ModulusContext>(key.modulus);
  Rsaprg gen(ctx, params, from_hex(o.seed_x), parse_reduction_method(o.method));
  if (gen.degenerate_seed()) err << "warning: seed reduces to 0 or 1, the stream is constant\n";
  write_output("", render_stream(gen.generate(o.nbits), o.format), out);
  return kExitOk;
}

int quad_keygen_cmd(const Options& o, std::ostream& out) {
  QuadParams params{o.n, o.k, std::nullopt};
  params.validate();
  const QuadKey key = quad_keygen(params, o.seed);
  std::ofstream f(o.out_path, std::ios::binary);
  if (!f) throw IoError("cannot open " + o.out_path + " for writing");
  write_quad_system(f, key.system);
  out << quad_state_to_hex(key.x0) << "\n";
  return kExitOk;
}

int quad_stream_cmd(const Options& o, std::ostream& out, std::ostream& err) {
  std::ifstream f(o.system_path, std::ios::binary);
  if (!f) throw IoError("cannot open " + o.system_path);
  const QuadSystem sys = read_quad_system(f);
  const std::size_t n = sys.params().n;
  QuadState state;
  if (o.x0.empty()) {
    err << "warning: no --x0 given, starting from the all-zero state\n";
    state.x.assign((n + kQuadWordBits - 1) / kQuadWordBits, 0);
  } else {
    state.x = quad_state_from_hex(o.x0, n);
  }
  std::unique_ptr<QuadPrecomp> pre;
  if (o.variant == "l2") pre = std::make_unique<QuadPrecomp>(sys, 2);
  if (o.variant == "l4") pre = std::make_unique<QuadPrecomp>(sys, 4);
  const QuadEvaluator eval = pre ? QuadEvaluator(sys, *pre) : QuadEvaluator(sys);
  write_output("", render_stream(quad_generate(sys, state, eval, o.nbits), o.format), out);
  return kExitOk;
}

std::vector<ReductionMethod> methods_or_all(const std::vector<std::string>& names) {
  if (names.empty()) return {kAllReductionMethods.begin(), kAllReductionMethods.end()};
  std::vector<ReductionMethod> out;
  for (const auto& s : names) out.push_back(parse_reduction_method(s));
  return out;
}

int bench_cmd(const std::string& which, const Options& o, std::ostream& out) {
  const BenchFormat format = parse_bench_format(o.bench_format);
  std::vector<BenchRecord> records;
  if (which == "mul") {
    std::vector<MulAlgorithm> algs;
    for (const auto& s : o.algs.empty() ? kAlgNames : o.algs) algs.push_back(MulAlgorithm::parse(s));
    records = bench_mul(o.sizes.empty() ? std::vector<std::size_t>{6144} : o.sizes, algs, o.reps, o.seed);
  } else if (which == "modred") {
    records = bench_modred(o.sizes.empty() ? std::vector<std::size_t>{6144} : o.sizes, methods_or_all(o.methods),
                           o.reps, o.seed, MulAlgorithm::parse(o.alg));
  } else if (which == "rsaprg") {
    const std::size_t n = o.sizes.empty() ? 6144 : o.sizes.front();
    records = bench_rsaprg(params_for(n, o.e, o.r, std::nullopt), methods_or_all(o.methods), o.reps, o.seed,
                           MulAlgorithm::parse(o.alg));
  } else {
    const std::size_t n = o.sizes.empty() ? 160 : o.sizes.front();
    records = bench_quad(n, o.k, o.variants.empty() ? kVariantNames : o.variants, o.reps, o.seed);
  }
  write_output(o.out_path, emit(records, format), out);
  return kExitOk;
}

int estimate_quad_cmd(const Options& o, std::ostream& out) {
  const MqEstimate est = mq_attack_log2_time(o.kq, o.n);
  out << (o.estimate_format == "json" ? to_json(est) : to_text(est));
  return kExitOk;
}

int estimate_rsaprg_cmd(const Options& o, std::ostream& out) {
  RsaprgParams p;
  p.n = o.bits;
  p.e = o.e;
  p.r = o.r.value_or(RsaprgParams::recommended().r);
  p.l = o.l.value_or(RsaprgParams::recommended().l);
  const RsaprgReport report = rsaprg_param_report(p);
  out << (o.estimate_format == "json" ? to_json(report) : to_text(report));
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Pseudorandom bit generators RSAPRG and QUAD", "prbg");
  app.require_subcommand(1);
  Options o;

  auto* rsaprg = app.add_subcommand("rsaprg", "RSA-based generator")->require_subcommand(1);
  auto* rk = rsaprg->add_subcommand("keygen", "Generate a modulus and parameter file");
  rk->add_option("--bits", o.bits, "Modulus bits, a multiple of 6")->required();
  rk->add_option("--e", o.e, "Public exponent")->required();
  rk->add_option("--seed", o.seed, "64-bit seed")->required();
  rk->add_option("--r", o.r, "Output bits per iteration (default 2196 for 6144/9)");
  rk->add_option("--l", o.l, "Total output cap in bits (default 2^32)");
  rk->add_option("--out", o.out_path, "Key file path (default stdout)");
  rk->add_flag("--emit-private", o.emit_private, "Include the factors p and q");

  auto* rs = rsaprg->add_subcommand("stream", "Emit keystream bits");
  rs->add_option("--params", o.params_path, "Key file")->required();
  rs->add_option("--seed-x", o.seed_x, "Seed x0 as hex, reduced mod N")->required();
  rs->add_option("--nbits", o.nbits, "Number of bits")->required();
  rs->add_option("--method", o.method)->check(CLI::IsMember(kMethodNames));
  rs->add_option("--format", o.format)->check(CLI::IsMember({"hex", "raw"}));

  auto* quad = app.add_subcommand("quad", "Multivariate quadratic generator")->require_subcommand(1);
  auto* qk = quad->add_subcommand("keygen", "Generate a random system; prints the x0 hex");
  qk->add_option("--n", o.n, "State bits")->required();
  qk->add_option("--k", o.k, "Expansion factor")->required();
  qk->add_option("--seed", o.seed, "64-bit seed")->required();
  qk->add_option("--out", o.out_path, "System file")->required();

  auto* qs = quad->add_subcommand("stream", "Emit keystream bits");
  qs->add_option("--system", o.system_path, "System file")->required();
  qs->add_option("--x0", o.x0, "Initial state as hex");
  qs->add_option("--nbits", o.nbits, "Number of bits")->required();
  qs->add_option("--variant", o.variant)->check(CLI::IsMember(kVariantNames));
  qs->add_option("--format", o.format)->check(CLI::IsMember({"hex", "raw"}));

  auto* bench = app.add_subcommand("bench", "Timing benchmarks")->require_subcommand(1);
  std::vector<CLI::App*> bench_subs;
  for (const char* name : {"mul", "modred", "rsaprg", "quad"}) {
    auto* b = bench->add_subcommand(name);
    b->add_option("--n", o.sizes, "Size(s) in bits")->delimiter(',');
    b->add_option("--reps", o.reps, "Operations per measurement")->check(CLI::PositiveNumber);
    b->add_option("--seed", o.seed, "64-bit seed");
    b->add_option("--format", o.bench_format)->check(CLI::IsMember({"csv", "markdown", "json"}));
    b->add_option("--out", o.out_path, "Output path (default stdout)");
    const std::string s = name;
    if (s == "mul") b->add_option("--alg", o.algs)->delimiter(',')->check(CLI::IsMember(kAlgNames));
    if (s == "modred" || s == "rsaprg") {
      b->add_option("--method", o.methods)->delimiter(',')->check(CLI::IsMember(kMethodNames));
      b->add_option("--alg", o.alg, "Multiplication used inside reductions")->check(CLI::IsMember(kAlgNames));
    }
    if (s == "rsaprg") {
      b->add_option("--e", o.e);
      b->add_option("--r", o.r);
    }
    if (s == "quad") {
      b->add_option("--k", o.k);
      b->add_option("--variant", o.variants)->delimiter(',')->check(CLI::IsMember(kVariantNames));
      b->add_option("--iters", o.reps, "Alias of --reps")->check(CLI::PositiveNumber);
    }
    bench_subs.push_back(b);
  }

  auto* estimate = app.add_subcommand("estimate", "Security parameter estimates")->require_subcommand(1);
  auto* eq = estimate->add_subcommand("quad", "Groebner attack time for QUAD");
  eq->add_option("--k", o.kq)->required();
  eq->add_option("--n", o.n)->required();
  eq->add_option("--format", o.estimate_format)->check(CLI::IsMember({"text", "json"}));
  auto* er = estimate->add_subcommand("rsaprg", "Check RSAPRG parameters");
  er->add_option("--n", o.bits)->required();
  er->add_option("--e", o.e)->required();
  er->add_option("--r", o.r)->required();
  er->add_option("--l", o.l)->required();
  er->add_option("--format", o.estimate_format)->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\nRun with --help for more information.\n";
    return kExitUsage;
  }

  try {
    if (rk->parsed()) return rsaprg_keygen_cmd(o, out);
    if (rs->parsed()) return rsaprg_stream_cmd(o, out, err);
    if (qk->parsed()) return quad_keygen_cmd(o, out);
    if (qs->parsed()) return quad_stream_cmd(o, out, err);
    for (auto* b : bench_subs) {
      if (b->parsed()) return bench_cmd(b->get_name(), o, out);
    }
    if (eq->parsed()) return estimate_quad_cmd(o, out);
    if (er->parsed()) return estimate_rsaprg_cmd(o, out);
  } catch (const std::invalid_argument& e) {  // ParameterError, InvalidModulus, MalformedHex
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::domain_error& e) {  // DomainError
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace prbg::cli
