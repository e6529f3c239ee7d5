#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>
#include <vector>

#include "oracle.hpp"
#include "prbg/bignum.hpp"
#include "prbg/errors.hpp"

using namespace prbg;
using oracle::from_mpz;
using oracle::to_mpz;

namespace {

const std::vector<MulAlgorithm> kAlgs = {MulAlgorithm::schoolbook(), MulAlgorithm::karatsuba(1),
                                         MulAlgorithm::karatsuba(2), MulAlgorithm::toom_cook3()};

Natural all_ones(std::size_t limbs) { return Natural::from_limbs(std::vector<Limb>(limbs, ~Limb{0})); }

}  // namespace

TEST_CASE("hex round trip and strict parsing") {
  CHECK(to_hex(Natural{}) == "0");
  CHECK(to_hex(Natural(255)) == "ff");
  CHECK(from_hex("0") == Natural{});
  CHECK(from_hex("1234567890abcdef1234567890abcdef").limb_count() == 2);
  for (const char* bad : {"", "0x10", "AB", "00", "012", "g", " 1"}) {
    CHECK_THROWS_AS(from_hex(bad), MalformedHex);
  }
  gmp_randclass r(gmp_randinit_default);
  r.seed(1);
  for (int i = 0; i < 200; ++i) {
    const mpz_class z = r.get_z_bits(1 + i * 7);
    CHECK(to_hex(from_mpz(z)) == z.get_str(16));
  }
}

TEST_CASE("normalization and basic accessors") {
  const Natural a = Natural::from_limbs(std::vector<Limb>{5, 0, 0});
  CHECK(a.limb_count() == 1);
  CHECK(a == Natural(5));
  CHECK(Natural{}.bit_length() == 0);
  CHECK(Natural::power_of_two(130).bit_length() == 131);
  CHECK(Natural::power_of_two(130).bit(130));
  CHECK_FALSE(Natural::power_of_two(130).bit(129));
}

TEST_CASE("add, sub, shifts and slices agree with gmp") {
  gmp_randclass r(gmp_randinit_default);
  r.seed(2);
  for (int i = 0; i < 2000; ++i) {
    const mpz_class x = r.get_z_bits(1 + (i * 37) % 700);
    const mpz_class y = r.get_z_bits(1 + (i * 53) % 700);
    const Natural a = from_mpz(x), b = from_mpz(y);
    CHECK(to_mpz(add(a, b)) == x + y);
    if (x >= y) {
      CHECK(to_mpz(sub(a, b)) == x - y);
    } else {
      CHECK_THROWS_AS(sub(a, b), std::underflow_error);
    }
    CHECK((cmp(a, b) < 0) == (x < y));
    const std::size_t k = static_cast<std::size_t>(i % 200);
    CHECK(to_mpz(shift_left(a, k)) == (x << k));
    CHECK(to_mpz(shift_right(a, k)) == (x >> k));
    const mpz_class mask = (mpz_class(1) << k) - 1;
    CHECK(to_mpz(low_bits(a, k)) == (x & mask));
    CHECK(to_mpz(bit_slice(a, k / 2, k)) == ((x >> (k / 2)) & mask));
  }
}

TEST_CASE("every multiplication algorithm agrees with gmp") {
  gmp_randclass r(gmp_randinit_default);
  r.seed(3);
  for (int i = 0; i < 600; ++i) {
    const mpz_class x = r.get_z_bits(1 + (i * 97) % 3000);
    const mpz_class y = r.get_z_bits(1 + (i * 61) % 3000);
    const Natural a = from_mpz(x), b = from_mpz(y);
    for (const auto alg : kAlgs) {
      CHECK(to_mpz(mul(a, b, alg)) == x * y);
      CHECK(to_mpz(square(a, alg)) == x * x);
    }
  }
}

TEST_CASE("multiplication edge shapes") {
  const std::vector<Natural> shapes = {Natural{},      Natural(1),      Natural(~Limb{0}), all_ones(2),
                                       all_ones(3),    all_ones(7),     all_ones(48),      all_ones(96),
                                       Natural::power_of_two(64 * 40),  Natural::power_of_two(64 * 95 + 63)};
  for (const auto& a : shapes) {
    for (const auto& b : shapes) {
      const mpz_class want = to_mpz(a) * to_mpz(b);
      for (const auto alg : kAlgs) CHECK(to_mpz(mul(a, b, alg)) == want);
    }
  }
}

TEST_CASE("leaf counts follow the recursion structure") {
  gmp_randclass r(gmp_randinit_default);
  r.seed(4);
  const Natural a = from_mpz(r.get_z_bits(96 * 64) | (mpz_class(1) << (96 * 64 - 1)));
  const Natural b = from_mpz(r.get_z_bits(96 * 64) | (mpz_class(1) << (96 * 64 - 1)));

  MulCounter school;
  mul(a, b, MulAlgorithm::schoolbook(), &school);
  CHECK(school.total() == 1);

  MulCounter k1;
  mul(a, b, MulAlgorithm::karatsuba(1), &k1);
  CHECK(k1.total() == 3);
  CHECK(k1.equivalent(48) == 3);

  MulCounter k2;
  mul(a, b, MulAlgorithm::karatsuba(2), &k2);
  CHECK(k2.total() == 9);

  MulCounter t3;
  mul(a, b, MulAlgorithm::toom_cook3(), &t3);
  CHECK(t3.total() == 5);
  CHECK(t3.equivalent(32) == 5);

  MulCounter sq;
  square(a, MulAlgorithm::karatsuba(1), &sq);
  CHECK(sq.total() == 3);
}

TEST_CASE("MulCounter bookkeeping") {
  MulCounter c;
  c.record(48, 96);
  c.record(96, 48);
  c.record(49, 48);
  CHECK(c.total() == 3);
  CHECK(c.to_string() == "49x48=1;96x48=2");
  CHECK(c.equivalent(48) == 5);
  MulCounter d;
  d.merge(c);
  d.merge(c);
  CHECK(d.total() == 6);
  d.reset();
  CHECK(d.total() == 0);
}

TEST_CASE("division agrees with gmp") {
  gmp_randclass r(gmp_randinit_default);
  r.seed(5);
  for (int i = 0; i < 3000; ++i) {
    const mpz_class x = r.get_z_bits(1 + (i * 89) % 2500);
    mpz_class y = r.get_z_bits(1 + (i * 31) % 1300);
    if (y == 0) y = 1;
    const auto [q, rem] = divrem(from_mpz(x), from_mpz(y));
    CHECK(to_mpz(q) == x / y);
    CHECK(to_mpz(rem) == x % y);
  }
  // Divisors that exercise the add-back step.
  const Natural b = Natural::from_limbs(std::vector<Limb>{0, 0, Limb{1} << 63});
  const Natural a = Natural::from_limbs(std::vector<Limb>{~Limb{0}, ~Limb{0}, ~Limb{0}, 0, ~Limb{0} >> 1});
  CHECK(to_mpz(divrem(a, b).second) == to_mpz(a) % to_mpz(b));
  CHECK_THROWS_AS(divrem(a, Natural{}), DivisionByZero);
  CHECK(mod_small(from_hex("123456789abcdef0123456789"), 97) == mpz_class(to_mpz(from_hex("123456789abcdef0123456789")) % 97).get_ui());
}

TEST_CASE("signed arithmetic") {
  const SignedNat a(Natural(7)), b(Natural(10));
  const SignedNat d = signed_sub(a, b);
  CHECK(d.negative);
  CHECK(d.magnitude == Natural(3));
  CHECK(signed_add(d, b) == a);
  const SignedNat p = signed_mul(d, negate(b));
  CHECK_FALSE(p.negative);
  CHECK(p.magnitude == Natural(30));
  CHECK_FALSE(SignedNat(Natural{}, true).negative);
}

TEST_CASE("algorithm names") {
  for (const auto alg : kAlgs) CHECK(MulAlgorithm::parse(alg.name()) == alg);
  CHECK_THROWS(MulAlgorithm::karatsuba(3));
  CHECK_THROWS(MulAlgorithm::parse("fft"));
}
