#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <cmath>

#include "json.hpp"
#include "prbg/errors.hpp"
#include "prbg/estimator.hpp"

using namespace prbg;

namespace {

// The closed form in its direct, unsimplified shape.
double direct_ratio(double k) {
  return -k + 0.5 + 0.5 * std::sqrt(2 * k * k - 10 * k - 1 + 2 * (k + 2) * std::sqrt(k * (k + 2)));
}

double exact_log2_binomial(unsigned long n, unsigned long r) {
  mpz_class c;
  mpz_bin_uiui(c.get_mpz_t(), n, r);
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, c.get_mpz_t());
  return std::log2(mant) + static_cast<double>(exp);
}

}  // namespace

TEST_CASE("closed form") {
  CHECK(degree_ratio_exact(2) == doctest::Approx(0.0514).epsilon(0.0002 / 0.0514));
  CHECK(degree_ratio_exact(2) == doctest::Approx(direct_ratio(2)).epsilon(1e-12));
  for (double k = 1; k <= 30; k += 0.5) CHECK(degree_ratio_exact(k) == doctest::Approx(direct_ratio(k)).epsilon(1e-9));
  CHECK(degree_ratio_exact(100) == doctest::Approx(0.0012438).epsilon(1e-4));
  double prev = degree_ratio_exact(2);
  for (double k = 3; k <= 1000; k += 1) {
    const double v = degree_ratio_exact(k);
    CHECK(v < prev);
    CHECK(v > 0);
    prev = v;
  }
  CHECK_THROWS_AS(degree_ratio_exact(0), DomainError);
  CHECK_THROWS_AS(degree_ratio_exact(-1), DomainError);
  CHECK_THROWS_AS(degree_ratio_exact(NAN), DomainError);
  CHECK_THROWS_AS(degree_ratio_exact(0.05), DomainError);
}

TEST_CASE("series") {
  CHECK(degree_ratio_series(8) == doctest::Approx(1.0 / 64 - 1.0 / 1024 + 7.0 / 65536));
  CHECK(degree_ratio_series(1) == doctest::Approx(0.1171875));
  double worst = 0;
  for (double k = 10; k <= 1000; k += 1) {
    const double exact = degree_ratio_exact(k);
    const double series = degree_ratio_series(k);
    worst = std::max(worst, std::fabs(exact - series) * k * k * k * k);
    if (k >= 20) CHECK(std::fabs(exact - series) / exact < 0.01);
  }
  CHECK(worst < 1.0);
}

TEST_CASE("attack time") {
  const MqEstimate e = mq_attack_log2_time(2, 160);
  CHECK(e.D == 8);
  CHECK(e.log2_time == doctest::Approx(2.37 * exact_log2_binomial(161, 8)));
  const MqEstimate small = mq_attack_log2_time(2, 20);
  CHECK(small.D == 1);
  CHECK(small.log2_time == doctest::Approx(2.37 * std::log2(21.0)));
  for (unsigned long n = 4; n <= 200; ++n) {
    const MqEstimate est = mq_attack_log2_time(2, n);
    CHECK(est.log2_time == doctest::Approx(2.37 * exact_log2_binomial(n + 1, est.D)).epsilon(1e-9));
  }
  double prev = 0;
  for (std::uint64_t n = 4; n <= 1000000; n = n * 3 / 2 + 1) {
    const double t = mq_attack_log2_time(2, n).log2_time;
    CHECK(std::isfinite(t));
    CHECK(t >= prev);
    prev = t;
  }
  CHECK_THROWS_AS(mq_attack_log2_time(2, 3), ParameterError);
}

TEST_CASE("rsaprg report") {
  CHECK(rsaprg_param_report(RsaprgParams::recommended()).endorsed);
  RsaprgParams p = RsaprgParams::recommended();
  p.l = std::uint64_t{1} << 20;
  CHECK(rsaprg_param_report(p).endorsed);
  p.l = std::uint64_t{1} << 33;
  CHECK_FALSE(rsaprg_param_report(p).endorsed);
  CHECK_FALSE(rsaprg_param_report({1024, 3, 100, std::uint64_t{1} << 20}).endorsed);
  const RsaprgReport bad = rsaprg_param_report({1024, 4, 100, 10});
  CHECK_FALSE(bad.valid);
  const auto j = nlohmann::json::parse(to_json(rsaprg_param_report(RsaprgParams::recommended())));
  CHECK(j.at("endorsed").get<bool>());
  CHECK(to_text(bad).find("unvalidated") != std::string::npos);
}

TEST_CASE("estimate rendering") {
  const auto j = nlohmann::json::parse(to_json(mq_attack_log2_time(2, 160)));
  CHECK(j.at("D").get<int>() == 8);
  CHECK(to_text(mq_attack_log2_time(2, 160)).find("D = 8") != std::string::npos);
}
