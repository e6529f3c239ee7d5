#include <algorithm>
#include <stdexcept>

#include "prbg/bignum.hpp"

namespace prbg {

namespace {

using u128 = unsigned __int128;
using Kind = MulAlgorithm::Kind;

Natural slice_limbs(const Natural& a, std::size_t from, std::size_t count) {
  const auto x = a.limbs();
  if (from >= x.size()) return {};
  const std::size_t end = std::min(x.size(), from + count);
  return Natural::from_limbs(x.subspan(from, end - from));
}

// acc += x * B^offset; acc must be wide enough to absorb the final carry.
void add_at(std::vector<Limb>& acc, std::span<const Limb> x, std::size_t offset) {
  Limb carry = 0;
  std::size_t i = 0;
  for (; i < x.size(); ++i) {
    const Limb s = acc[offset + i] + x[i];
    const Limb c1 = s < x[i];
    acc[offset + i] = s + carry;
    carry = c1 | (acc[offset + i] < s);
  }
  for (std::size_t j = offset + i; carry != 0; ++j) {
    acc[j] += 1;
    carry = acc[j] == 0;
  }
}

Natural leaf_mul(const Natural& a, const Natural& b, MulCounter* counter) {
  const auto x = a.limbs();
  const auto y = b.limbs();
  if (x.empty() || y.empty()) return {};
  if (counter != nullptr) counter->record(x.size(), y.size());
  std::vector<Limb> out(x.size() + y.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    Limb carry = 0;
    const u128 xi = x[i];
    for (std::size_t j = 0; j < y.size(); ++j) {
      const u128 t = xi * y[j] + out[i + j] + carry;
      out[i + j] = static_cast<Limb>(t);
      carry = static_cast<Limb>(t >> 64);
    }
    out[i + y.size()] = carry;
  }
  return Natural::from_limbs(std::move(out));
}

// Off-diagonal products are computed once and doubled.
Natural leaf_square(const Natural& a, MulCounter* counter) {
  const auto x = a.limbs();
  if (x.empty()) return {};
  if (counter != nullptr) counter->record(x.size(), x.size());
  const std::size_t n = x.size();
  std::vector<Limb> out(2 * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Limb carry = 0;
    const u128 xi = x[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const u128 t = xi * x[j] + out[i + j] + carry;
      out[i + j] = static_cast<Limb>(t);
      carry = static_cast<Limb>(t >> 64);
    }
    out[i + n] = carry;
  }
  Limb top = 0;
  for (std::size_t i = 0; i < 2 * n; ++i) {
    const Limb next = out[i] >> 63;
    out[i] = (out[i] << 1) | top;
    top = next;
  }
  Limb carry = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const u128 sq = static_cast<u128>(x[i]) * x[i];
    u128 t = static_cast<u128>(out[2 * i]) + static_cast<Limb>(sq) + carry;
    out[2 * i] = static_cast<Limb>(t);
    t = static_cast<u128>(out[2 * i + 1]) + static_cast<Limb>(sq >> 64) + static_cast<Limb>(t >> 64);
    out[2 * i + 1] = static_cast<Limb>(t);
    carry = static_cast<Limb>(t >> 64);
  }
  return Natural::from_limbs(std::move(out));
}

Natural div_exact_small(const Natural& a, Limb d) {
  const auto x = a.limbs();
  std::vector<Limb> q(x.size());
  u128 rem = 0;
  for (std::size_t i = x.size(); i-- > 0;) {
    const u128 cur = (rem << 64) | x[i];
    q[i] = static_cast<Limb>(cur / d);
    rem = cur % d;
  }
  if (rem != 0) throw std::logic_error("inexact division in Toom-Cook interpolation");
  return Natural::from_limbs(std::move(q));
}

SignedNat div_exact_small(const SignedNat& a, Limb d) {
  return {div_exact_small(a.magnitude, d), a.negative};
}

Natural mul_rec(const Natural& a, const Natural& b, Kind kind, int levels, MulCounter* counter);
Natural square_rec(const Natural& a, Kind kind, int levels, MulCounter* counter);

Natural combine(std::size_t width, std::size_t h, std::initializer_list<const Natural*> parts) {
  std::vector<Limb> acc(width + 2, 0);
  std::size_t offset = 0;
  for (const Natural* p : parts) {
    if (acc.size() < offset + p->limb_count() + 1) acc.resize(offset + p->limb_count() + 1, 0);
    add_at(acc, p->limbs(), offset);
    offset += h;
  }
  return Natural::from_limbs(std::move(acc));
}

Natural karatsuba(const Natural& a, const Natural& b, int levels, MulCounter* counter) {
  const std::size_t la = a.limb_count();
  const std::size_t lb = b.limb_count();
  const std::size_t h = (std::max(la, lb) + 1) / 2;
  if (std::min(la, lb) <= h) {
    // One operand fits in a half: split only the longer one.
    const Natural& lng = la >= lb ? a : b;
    const Natural& sht = la >= lb ? b : a;
    const Natural lo = mul_rec(slice_limbs(lng, 0, h), sht, Kind::Karatsuba, levels - 1, counter);
    const Natural hi = mul_rec(slice_limbs(lng, h, h), sht, Kind::Karatsuba, levels - 1, counter);
    return combine(la + lb, h, {&lo, &hi});
  }
  const Natural a0 = slice_limbs(a, 0, h), a1 = slice_limbs(a, h, h);
  const Natural b0 = slice_limbs(b, 0, h), b1 = slice_limbs(b, h, h);
  const Natural z0 = mul_rec(a0, b0, Kind::Karatsuba, levels - 1, counter);
  const Natural z2 = mul_rec(a1, b1, Kind::Karatsuba, levels - 1, counter);
  const Natural mid = mul_rec(add(a0, a1), add(b0, b1), Kind::Karatsuba, levels - 1, counter);
  const Natural z1 = sub(sub(mid, z0), z2);
  return combine(la + lb, h, {&z0, &z1, &z2});
}

Natural karatsuba_square(const Natural& a, int levels, MulCounter* counter) {
  const std::size_t h = (a.limb_count() + 1) / 2;
  const Natural a0 = slice_limbs(a, 0, h), a1 = slice_limbs(a, h, h);
  const Natural z0 = square_rec(a0, Kind::Karatsuba, levels - 1, counter);
  const Natural z2 = square_rec(a1, Kind::Karatsuba, levels - 1, counter);
  const Natural mid = square_rec(add(a0, a1), Kind::Karatsuba, levels - 1, counter);
  const Natural z1 = sub(sub(mid, z0), z2);
  return combine(2 * a.limb_count(), h, {&z0, &z1, &z2});
}

struct ToomPoints {
  SignedNat at0, at1, atm1, atm2, atinf;
};

ToomPoints toom_evaluate(const Natural& a, std::size_t k) {
  const Natural a0 = slice_limbs(a, 0, k), a1 = slice_limbs(a, k, k), a2 = slice_limbs(a, 2 * k, k);
  const Natural t = add(a0, a2);
  ToomPoints p;
  p.at0 = SignedNat(a0);
  p.at1 = SignedNat(add(t, a1));
  p.atm1 = signed_sub(SignedNat(t), SignedNat(a1));
  const SignedNat s = signed_add(p.atm1, SignedNat(a2));
  p.atm2 = signed_sub(SignedNat(shift_left(s.magnitude, 1), s.negative), SignedNat(a0));
  p.atinf = SignedNat(a2);
  return p;
}

// Bodrato's interpolation sequence for the five point values.
Natural toom_interpolate(const SignedNat& r0, SignedNat r1, const SignedNat& rm1, const SignedNat& rm2,
                         const SignedNat& rinf, std::size_t k, std::size_t width) {
  SignedNat r3 = div_exact_small(signed_sub(rm2, r1), 3);
  r1 = div_exact_small(signed_sub(r1, rm1), 2);
  SignedNat r2 = signed_sub(rm1, r0);
  r3 = signed_add(div_exact_small(signed_sub(r2, r3), 2), SignedNat(shift_left(rinf.magnitude, 1)));
  r2 = signed_sub(signed_add(r2, r1), rinf);
  r1 = signed_sub(r1, r3);
  if (r1.negative || r2.negative || r3.negative) throw std::logic_error("negative Toom-Cook coefficient");
  return combine(width, k, {&r0.magnitude, &r1.magnitude, &r2.magnitude, &r3.magnitude, &rinf.magnitude});
}

Natural toom3(const Natural& a, const Natural& b, int levels, MulCounter* counter) {
  const std::size_t k = (std::max(a.limb_count(), b.limb_count()) + 2) / 3;
  const ToomPoints pa = toom_evaluate(a, k);
  const ToomPoints pb = toom_evaluate(b, k);
  auto product = [&](const SignedNat& x, const SignedNat& y) {
    return SignedNat(mul_rec(x.magnitude, y.magnitude, Kind::ToomCook3, levels - 1, counter),
                     x.negative != y.negative);
  };
  return toom_interpolate(product(pa.at0, pb.at0), product(pa.at1, pb.at1), product(pa.atm1, pb.atm1),
                          product(pa.atm2, pb.atm2), product(pa.atinf, pb.atinf), k,
                          a.limb_count() + b.limb_count());
}

Natural toom3_square(const Natural& a, int levels, MulCounter* counter) {
  const std::size_t k = (a.limb_count() + 2) / 3;
  const ToomPoints p = toom_evaluate(a, k);
  auto sq = [&](const SignedNat& x) {
    return SignedNat(square_rec(x.magnitude, Kind::ToomCook3, levels - 1, counter));
  };
  return toom_interpolate(sq(p.at0), sq(p.at1), sq(p.atm1), sq(p.atm2), sq(p.atinf), k, 2 * a.limb_count());
}

Natural mul_rec(const Natural& a, const Natural& b, Kind kind, int levels, MulCounter* counter) {
  if (a.is_zero() || b.is_zero()) return {};
  const std::size_t longest = std::max(a.limb_count(), b.limb_count());
  if (levels <= 0 || kind == Kind::Schoolbook) return leaf_mul(a, b, counter);
  if (kind == Kind::Karatsuba && longest >= 2) return karatsuba(a, b, levels, counter);
  if (kind == Kind::ToomCook3 && longest >= 3) return toom3(a, b, levels, counter);
  return leaf_mul(a, b, counter);
}

Natural square_rec(const Natural& a, Kind kind, int levels, MulCounter* counter) {
  if (a.is_zero()) return {};
  if (levels <= 0 || kind == Kind::Schoolbook) return leaf_square(a, counter);
  if (kind == Kind::Karatsuba && a.limb_count() >= 2) return karatsuba_square(a, levels, counter);
  if (kind == Kind::ToomCook3 && a.limb_count() >= 3) return toom3_square(a, levels, counter);
  return leaf_square(a, counter);
}

}  // namespace

MulAlgorithm MulAlgorithm::karatsuba(int levels) {
  if (levels != 1 && levels != 2) throw std::invalid_argument("Karatsuba levels must be 1 or 2");
  return {Kind::Karatsuba, levels};
}

std::string MulAlgorithm::name() const {
  switch (kind) {
    case Kind::Schoolbook:
      return "schoolbook";
    case Kind::Karatsuba:
      return "karatsuba" + std::to_string(levels);
    case Kind::ToomCook3:
      return "toom3";
  }
  return "unknown";
}

MulAlgorithm MulAlgorithm::parse(std::string_view name) {
  if (name == "schoolbook") return schoolbook();
  if (name == "karatsuba1") return karatsuba(1);
  if (name == "karatsuba2") return karatsuba(2);
  if (name == "toom3") return toom_cook3();
  throw std::invalid_argument("unknown multiplication algorithm: " + std::string(name));
}

Natural mul(const Natural& a, const Natural& b, MulAlgorithm alg, MulCounter* counter) {
  return mul_rec(a, b, alg.kind, alg.levels, counter);
}

Natural square(const Natural& a, MulAlgorithm alg, MulCounter* counter) {
  return square_rec(a, alg.kind, alg.levels, counter);
}

}  // namespace prbg
