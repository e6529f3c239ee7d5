#include <bit>

#include "prbg/bignum.hpp"
#include "prbg/errors.hpp"

namespace prbg {

namespace {

using u128 = unsigned __int128;

std::pair<Natural, Natural> divrem_single(const Natural& a, Limb d) {
  const auto x = a.limbs();
  std::vector<Limb> q(x.size());
  u128 rem = 0;
  for (std::size_t i = x.size(); i-- > 0;) {
    const u128 cur = (rem << 64) | x[i];
    q[i] = static_cast<Limb>(cur / d);
    rem = cur % d;
  }
  return {Natural::from_limbs(std::move(q)), Natural(static_cast<std::uint64_t>(rem))};
}

}  // namespace

// Knuth, TAOCP vol. 2, 4.3.1 Algorithm D.
std::pair<Natural, Natural> divrem(const Natural& a, const Natural& b) {
  if (b.is_zero()) throw DivisionByZero();
  if (cmp(a, b) < 0) return {Natural{}, a};
  if (b.limb_count() == 1) return divrem_single(a, b.limbs()[0]);

  const unsigned s = static_cast<unsigned>(std::countl_zero(b.limbs().back()));
  const Natural vn = shift_left(b, s);
  std::vector<Limb> u(a.limb_count() + 1, 0);
  {
    const Natural un = shift_left(a, s);
    std::copy(un.limbs().begin(), un.limbs().end(), u.begin());
  }
  const auto v = vn.limbs();
  const std::size_t n = v.size();
  const std::size_t m = a.limb_count() - n;
  std::vector<Limb> q(m + 1, 0);
  const Limb vtop = v[n - 1];
  const Limb vnext = v[n - 2];

  for (std::size_t j = m + 1; j-- > 0;) {
    const u128 num = (static_cast<u128>(u[j + n]) << 64) | u[j + n - 1];
    u128 qhat = num / vtop;
    u128 rhat = num % vtop;
    while (qhat >> 64 != 0 || qhat * vnext > ((rhat << 64) | u[j + n - 2])) {
      --qhat;
      rhat += vtop;
      if (rhat >> 64 != 0) break;
    }

    Limb borrow = 0;
    Limb carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const u128 p = qhat * v[i] + carry;
      carry = static_cast<Limb>(p >> 64);
      const Limb plo = static_cast<Limb>(p);
      const Limb t = u[i + j] - plo;
      const Limb b1 = u[i + j] < plo;
      u[i + j] = t - borrow;
      borrow = b1 | (t < borrow);
    }
    const Limb t = u[j + n] - carry;
    const Limb b1 = u[j + n] < carry;
    u[j + n] = t - borrow;
    const bool negative = (b1 | (t < borrow)) != 0;

    if (negative) {
      --qhat;
      Limb c = 0;
      for (std::size_t i = 0; i < n; ++i) {
        const u128 sum = static_cast<u128>(u[i + j]) + v[i] + c;
        u[i + j] = static_cast<Limb>(sum);
        c = static_cast<Limb>(sum >> 64);
      }
      u[j + n] += c;
    }
    q[j] = static_cast<Limb>(qhat);
  }

  u.resize(n);
  return {Natural::from_limbs(std::move(q)), shift_right(Natural::from_limbs(std::move(u)), s)};
}

}  // namespace prbg
