#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <memory>

#include "oracle.hpp"
#include "prbg/errors.hpp"
#include "prbg/primes.hpp"
#include "prbg/random.hpp"
#include "prbg/rsaprg.hpp"

using namespace prbg;
using oracle::from_mpz;
using oracle::to_mpz;

namespace {

RsaprgParams toy_params() {
  RsaprgParams p;
  p.n = 24;
  p.e = 3;
  p.r = 5;
  p.l = 1000;
  return p;
}

BitString low_bits_of(const mpz_class& x, std::size_t r) {
  BitString out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(mpz_tstbit(x.get_mpz_t(), i) != 0);
  return out;
}

}  // namespace

TEST_CASE("exponent schedules") {
  using S = ExpStep;
  CHECK(exponent_schedule(9) == std::vector<ExpStep>{S::Square, S::Square, S::Square, S::Multiply});
  CHECK(exponent_schedule(3) == std::vector<ExpStep>{S::Square, S::Multiply});
  CHECK(exponent_schedule(65537).size() == 17);
  CHECK_THROWS_AS(exponent_schedule(8), ParameterError);
  CHECK_THROWS_AS(exponent_schedule(1), ParameterError);
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(RsaprgParams::recommended().validate());
  RsaprgParams p = RsaprgParams::recommended();
  p.r = 6144;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = RsaprgParams::recommended();
  p.n = 6143;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = RsaprgParams::recommended();
  p.e = 4;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = RsaprgParams::recommended();
  p.l = 0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
}

TEST_CASE("modpow agrees with gmp") {
  gmp_randclass r(gmp_randinit_default);
  r.seed(21);
  for (int i = 0; i < 200; ++i) {
    mpz_class m = r.get_z_bits(300) | 1;
    const mpz_class b = r.get_z_bits(400), e = r.get_z_bits(1 + i % 90);
    mpz_class want;
    mpz_powm(want.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    CHECK(to_mpz(modpow(from_mpz(b), from_mpz(e), from_mpz(m))) == want);
  }
}

TEST_CASE("primality test") {
  SplitMix64 rng(5);
  CHECK(is_probable_prime(Natural(2), 10, rng));
  CHECK(is_probable_prime(Natural(1999), 10, rng));
  CHECK_FALSE(is_probable_prime(Natural(561), 10, rng));  // Carmichael
  CHECK_FALSE(is_probable_prime(Natural(1), 10, rng));
  gmp_randclass r(gmp_randinit_default);
  r.seed(22);
  for (int i = 0; i < 300; ++i) {
    const mpz_class x = r.get_z_bits(40 + i % 200) | 1;
    CHECK(is_probable_prime(from_mpz(x), 20, rng) == (mpz_probab_prime_p(x.get_mpz_t(), 30) != 0));
  }
}

TEST_CASE("key generation") {
  for (const std::size_t n : {12ul, 24ul, 96ul, 510ul}) {
    const RsaprgKey key = rsaprg_keygen(n, 9, 77);
    REQUIRE(key.p);
    REQUIRE(key.q);
    const mpz_class p = to_mpz(*key.p), q = to_mpz(*key.q);
    CHECK(key.modulus.bit_length() == n);
    CHECK(to_mpz(key.modulus) == p * q);
    CHECK(p != q);
    for (const mpz_class& f : {p, q}) {
      CHECK(mpz_probab_prime_p(f.get_mpz_t(), 30) != 0);
      CHECK(mpz_sizeinbase(f.get_mpz_t(), 2) == n / 2);
      CHECK(mpz_tstbit(f.get_mpz_t(), n / 2 - 2) != 0);
      mpz_class g;
      const mpz_class pm1 = f - 1;
      mpz_gcd_ui(g.get_mpz_t(), pm1.get_mpz_t(), 9);
      CHECK(g == 1);
    }
    CHECK(rsaprg_keygen(n, 9, 77).modulus == key.modulus);
  }
  CHECK(rsaprg_keygen(96, 9, 78).modulus != rsaprg_keygen(96, 9, 77).modulus);
  CHECK_THROWS_AS(rsaprg_keygen(100, 9, 1), ParameterError);
}

TEST_CASE("iteration matches x^e mod N and the tapped low bits") {
  const RsaprgKey key = rsaprg_keygen(24, 3, 1);
  auto ctx = std::make_shared<const ModulusContext>(key.modulus);
  const mpz_class N = to_mpz(key.modulus);
  for (const auto method : kAllReductionMethods) {
    Rsaprg gen(ctx, toy_params(), Natural(123456), method);
    mpz_class x = mpz_class(123456) % N;
    for (int i = 0; i < 50; ++i) {
      mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 3, N.get_mpz_t());
      const BitString out = gen.iterate();
      CHECK(to_mpz(gen.state()) == x);
      CHECK(out == low_bits_of(x, 5));
    }
    CHECK(gen.counts().squarings == 50);
    CHECK(gen.counts().multiplications == 50);
    CHECK(gen.counts().reductions == 100);
  }
}

TEST_CASE("current-state tap emits one block earlier") {
  const RsaprgKey key = rsaprg_keygen(24, 3, 2);
  auto ctx = std::make_shared<const ModulusContext>(key.modulus);
  Rsaprg next(ctx, toy_params(), Natural(999));
  Rsaprg current(ctx, toy_params(), Natural(999), ReductionMethod::Method2, OutputTap::CurrentState);
  const BitString first = next.iterate();
  current.iterate();
  CHECK(current.iterate() == first);
}

TEST_CASE("recommended parameters at n = 6144") {
  SplitMix64 rng(31);
  Natural N = random_exact_bits(rng, 6144);
  if (!N.is_odd()) N = add(N, Natural(1));
  auto ctx = std::make_shared<const ModulusContext>(N);
  const Natural seed = random_natural(rng, 6000);
  Rsaprg gen(ctx, RsaprgParams::recommended(), seed);
  mpz_class x = to_mpz(seed) % to_mpz(N);
  for (int i = 0; i < 5; ++i) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 9, to_mpz(N).get_mpz_t());
    CHECK(gen.iterate() == low_bits_of(x, 2196));
  }
  CHECK(gen.counts().squarings == 15);
  CHECK(gen.counts().multiplications == 5);
  CHECK(gen.counts().reductions == 20);
  CHECK(gen.bits_emitted() == 5 * 2196);
}

TEST_CASE("generate is a prefix of the iterated stream and respects the cap") {
  const RsaprgKey key = rsaprg_keygen(24, 3, 3);
  auto ctx = std::make_shared<const ModulusContext>(key.modulus);
  Rsaprg a(ctx, toy_params(), Natural(4242));
  Rsaprg b(ctx, toy_params(), Natural(4242));
  BitString it;
  for (int i = 0; i < 4; ++i) it.append(a.iterate());
  const BitString g = b.generate(17);
  CHECK(g.size() == 17);
  for (std::size_t i = 0; i < 17; ++i) CHECK(g[i] == it[i]);
  CHECK(b.bits_emitted() == 17);

  RsaprgParams capped = toy_params();
  capped.l = 12;
  Rsaprg c(ctx, capped, Natural(4242));
  c.iterate();
  c.iterate();
  CHECK_THROWS_AS(c.iterate(), BudgetExhausted);
  Rsaprg d(ctx, capped, Natural(4242));
  CHECK_NOTHROW(d.generate(12));
  CHECK_THROWS_AS(d.generate(1), BudgetExhausted);
}

TEST_CASE("degenerate seeds") {
  const RsaprgKey key = rsaprg_keygen(24, 3, 4);
  auto ctx = std::make_shared<const ModulusContext>(key.modulus);
  CHECK(Rsaprg(ctx, toy_params(), Natural{}).degenerate_seed());
  CHECK(Rsaprg(ctx, toy_params(), add(key.modulus, Natural(1))).degenerate_seed());
  CHECK_FALSE(Rsaprg(ctx, toy_params(), Natural(2)).degenerate_seed());
}

TEST_CASE("context and parameters must agree") {
  const RsaprgKey key = rsaprg_keygen(24, 3, 5);
  auto ctx = std::make_shared<const ModulusContext>(key.modulus);
  RsaprgParams p = toy_params();
  p.n = 30;
  CHECK_THROWS_AS(Rsaprg(ctx, p, Natural(5)), ParameterError);
}

TEST_CASE("json key files") {
  const RsaprgKey key = rsaprg_keygen(24, 3, 6);
  const std::string pub = rsaprg_params_to_json(toy_params(), key, false);
  CHECK(pub.find("\"p\"") == std::string::npos);
  const auto [params, loaded] = rsaprg_params_from_json(pub);
  CHECK(params == toy_params());
  CHECK(loaded.modulus == key.modulus);
  CHECK_FALSE(loaded.p);
  const auto [params2, full] = rsaprg_params_from_json(rsaprg_params_to_json(toy_params(), key, true));
  CHECK(full.p == key.p);
  CHECK(full.q == key.q);
  CHECK_THROWS_AS(rsaprg_params_to_json(toy_params(), loaded, true), ParameterError);
  CHECK_THROWS_AS(rsaprg_params_from_json("{"), FormatError);
  CHECK_THROWS_AS(rsaprg_params_from_json(R"({"n":24,"e":3,"r":5,"l":9})"), FormatError);
  CHECK_THROWS_AS(rsaprg_params_from_json(R"({"n":24,"e":3,"r":5,"l":9,"N":"XYZ"})"), FormatError);
}
