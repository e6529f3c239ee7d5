#include "prbg/estimator.hpp"

#include <cmath>
#include <sstream>

#include "json.hpp"

#include "prbg/errors.hpp"

namespace prbg {

namespace {

constexpr std::size_t kEndorsedBits = 6144;
constexpr std::uint64_t kEndorsedExponent = 9;
constexpr std::size_t kEndorsedOutput = 2196;
constexpr std::uint64_t kEndorsedCap = std::uint64_t{1} << 32;
constexpr std::size_t kSmallestStudiedBits = 512;

}  // namespace

double degree_ratio_exact(double k) {
  if (!std::isfinite(k) || k <= 0) throw DomainError("degree ratio needs a finite k > 0");
  const double inner = k * (k + 2);
  const double root = std::sqrt(inner);
  const double s = 2 * k * k - 10 * k - 1 + 2 * (k + 2) * root;
  if (s < 0) throw DomainError("degree ratio radicand is negative for this k");
  // Same value as -k + 1/2 + sqrt(s)/2, rearranged to avoid cancellation at large k:
  // the numerator collapses to (k^2 + 2k - 1) over a product of positive terms.
  const double num = k * k + 2 * k - 1;
  const double den = (2 * (k + 2) * root + 2 * k * k + 6 * k + 2) * (std::sqrt(s) / 2 + k - 0.5);
  if (den <= 0) return -k + 0.5 + 0.5 * std::sqrt(s);
  return num / den;
}

double degree_ratio_series(double k) {
  return 1.0 / (8 * k) - 1.0 / (16 * k * k) + 7.0 / (128 * k * k * k);
}

double log2_binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return -INFINITY;
  const double nd = static_cast<double>(n);
  const double rd = static_cast<double>(r);
  return (std::lgamma(nd + 1) - std::lgamma(rd + 1) - std::lgamma(nd - rd + 1)) / std::log(2.0);
}

MqEstimate mq_attack_log2_time(double k, std::uint64_t n) {
  if (n < 4) throw ParameterError("MQ estimate needs n >= 4");
  const double ratio = degree_ratio_exact(k);
  MqEstimate est;
  est.k = k;
  est.n = n;
  const double d = std::floor(static_cast<double>(n) * ratio);
  est.D = d < 1 ? 1 : static_cast<std::uint64_t>(d);
  est.log2_time = kGroebnerExponent * log2_binomial(n + 1, est.D);
  return est;
}

RsaprgReport rsaprg_param_report(const RsaprgParams& params) {
  RsaprgReport report;
  report.params = params;
  try {
    params.validate();
  } catch (const ParameterError& e) {
    report.valid = false;
    report.notes.emplace_back(e.what());
  }
  const bool point = params.n == kEndorsedBits && params.e == kEndorsedExponent && params.r == kEndorsedOutput;
  report.endorsed = report.valid && point && params.l <= kEndorsedCap;
  if (report.endorsed) {
    report.notes.emplace_back("recommended parameter point");
    return report;
  }
  if (point && params.l > kEndorsedCap) report.notes.emplace_back("output cap l exceeds 2^32");
  if (params.n < kSmallestStudiedBits) report.notes.emplace_back("toy modulus size, for testing only");
  report.notes.emplace_back("unvalidated; consult the security analysis");
  return report;
}

std::string to_json(const MqEstimate& est) {
  nlohmann::ordered_json j;
  j["k"] = est.k;
  j["n"] = est.n;
  j["degree_ratio"] = degree_ratio_exact(est.k);
  j["D"] = est.D;
  j["log2_time"] = est.log2_time;
  return j.dump(2) + "\n";
}

std::string to_text(const MqEstimate& est) {
  std::ostringstream os;
  os.precision(6);
  os << "k = " << est.k << ", n = " << est.n << "\n"
     << "D/n = " << degree_ratio_exact(est.k) << " (series " << degree_ratio_series(est.k) << ")\n"
     << "D = " << est.D << "\n"
     << "log2 T = " << est.log2_time << "\n";
  return os.str();
}

std::string to_json(const RsaprgReport& report) {
  nlohmann::ordered_json j;
  j["n"] = report.params.n;
  j["e"] = report.params.e;
  j["r"] = report.params.r;
  j["l"] = report.params.l;
  j["valid"] = report.valid;
  j["endorsed"] = report.endorsed;
  j["notes"] = report.notes;
  return j.dump(2) + "\n";
}

std::string to_text(const RsaprgReport& report) {
  std::ostringstream os;
  os << "n = " << report.params.n << ", e = " << report.params.e << ", r = " << report.params.r
     << ", l = " << report.params.l << "\n"
     << (report.endorsed ? "endorsed" : "unvalidated") << "\n";
  for (const auto& note : report.notes) os << "  " << note << "\n";
  return os.str();
}

}  // namespace prbg
