#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "prbg/rsaprg.hpp"

namespace prbg {

struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Degree of regularity ratio D/n for kn random quadratic equations in n
// unknowns:  D/n = -k + 1/2 + 1/2 sqrt(2k^2 - 10k - 1 + 2(k+2) sqrt(k(k+2))).
// Throws DomainError when a radicand is negative or k is not finite.
double degree_ratio_exact(double k);
// 1/(8k) - 1/(16k^2) + 7/(128k^3); only meaningful for large k.
double degree_ratio_series(double k);

inline constexpr double kGroebnerExponent = 2.37;

struct MqEstimate {
  double k = 0;
  std::uint64_t n = 0;
  std::uint64_t D = 0;    // max(1, floor(n * D/n))
  double log2_time = 0;   // 2.37 * log2 C(n+1, D)
};

// n >= 4, else ParameterError.
MqEstimate mq_attack_log2_time(double k, std::uint64_t n);
double log2_binomial(std::uint64_t n, std::uint64_t r);

struct RsaprgReport {
  RsaprgParams params;
  bool valid = true;       // params.validate() passed
  bool endorsed = false;   // exactly (6144, 9, 2196) with l <= 2^32
  std::vector<std::string> notes;
};

RsaprgReport rsaprg_param_report(const RsaprgParams& params);

std::string to_json(const MqEstimate& est);
std::string to_text(const MqEstimate& est);
std::string to_json(const RsaprgReport& report);
std::string to_text(const RsaprgReport& report);

}  // namespace prbg
