// SPDX-License-Identifier: Apache-2.0
#include "diophlab/algebraic.hpp"

#include <algorithm>
#include <sstream>

namespace dl {
namespace algebraic {

using exact::IntPoly;
using interval::Cmp;
using interval::ComplexBall;
using interval::RealBall;

AlgebraicNumber AlgebraicNumber::from_minpoly_root(const IntPoly& p_in, long root_index) {
  IntPoly p = p_in.primitive_part();
  if (p.degree() < 1) throw PreconditionError("minimal polynomial must have degree >= 1");
  if (!exact::is_irreducible(p)) throw PreconditionError("polynomial is not irreducible over Q");
  if (root_index < 0 || root_index >= p.degree())
    throw PreconditionError("root index out of range");
  return from_irreducible(std::move(p), root_index);
}

AlgebraicNumber AlgebraicNumber::from_irreducible(IntPoly p, long root_index) {
  AlgebraicNumber a;
  a.minpoly_ = p.primitive_part();
  a.root_index_ = root_index;
  if (root_index < 0 || root_index >= a.minpoly_.degree())
    throw PreconditionError("root index out of range");
  return a;
}

AlgebraicNumber AlgebraicNumber::from_rat(const Rat& r) {
  // minpoly q x - p with q > 0
  IntPoly p({Int(-r.get_num()), Int(r.get_den())});
  return from_irreducible(std::move(p), 0);
}

Rat AlgebraicNumber::rational_value() const {
  if (!is_rational()) throw PreconditionError("not a rational number");
  return make_rat(-minpoly_.coeff(0), minpoly_.coeff(1));
}

Rat AlgebraicNumber::trace() const {
  long d = degree();
  return make_rat(-minpoly_.coeff(d - 1), minpoly_.coeff(d));
}

std::shared_ptr<const ConjugateSet> AlgebraicNumber::conjugates(long bits, long ceiling) const {
  std::lock_guard<std::mutex> lk(cache_->mu);
  Rat target;
  {
    Int t(1);
    mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(bits > 0 ? bits : 0));
    target = make_rat(1, t);
  }
  if (cache_->set) {
    bool good = true;
    const auto& iso = cache_->set->isolation();
    for (const auto& d : iso.disks)
      if (d.re().rad_upper() > target || d.im().rad_upper() > target) good = false;
    if (good) return cache_->set;
    auto refined = std::make_shared<ConjugateSet>(roots::refine(iso, bits, ceiling));
    cache_->set = refined;
    return refined;
  }
  auto fresh = std::make_shared<ConjugateSet>(roots::isolate(minpoly_, bits, ceiling));
  cache_->set = fresh;
  return fresh;
}

ComplexBall AlgebraicNumber::enclosure(long bits, long ceiling) const {
  return conjugates(bits, ceiling)->root(root_index_);
}

bool AlgebraicNumber::is_real() const {
  if (is_rational()) return true;
  auto set = conjugates(64, interval::precision_ceiling_from_env());
  return set->is_real_root(root_index_);
}

int AlgebraicNumber::sign(long ceiling) const {
  if (is_rational()) return sgn(rational_value());
  if (!is_real()) throw PreconditionError("sign of a non-real number");
  for (long bits = 64; bits <= ceiling; bits *= 2) {
    RealBall re = enclosure(bits, ceiling).re();
    if (re.lower() > 0) return 1;
    if (re.upper() < 0) return -1;
  }
  throw PrecisionExhausted("sign: could not separate from zero");
}

std::string AlgebraicNumber::to_string() const {
  std::ostringstream os;
  if (is_rational()) {
    os << "rat=" << rat_to_string(rational_value());
  } else {
    os << "poly=" << minpoly_.to_string() << ";root=" << root_index_;
  }
  return os.str();
}

namespace {

long default_ceiling() { return interval::precision_ceiling_from_env(); }

// Locate which (factor, root index) a refinable complex value belongs to.
// `value_at` must return an enclosure of the exact target value at roughly
// the requested precision.  The target is known to be a root of exactly one
// of the given irreducible polynomials.
template <typename ValueAt>
AlgebraicNumber locate(const std::vector<IntPoly>& factors, ValueAt&& value_at, long ceiling) {
  for (long bits = 64; bits <= ceiling; bits *= 2) {
    ComplexBall v = value_at(bits);
    int hits = 0;
    const IntPoly* hit_poly = nullptr;
    long hit_index = -1;
    for (const auto& f : factors) {
      roots::Isolation iso = roots::isolate(f, bits, ceiling);
      for (size_t k = 0; k < iso.disks.size(); ++k) {
        if (iso.disks[k].overlaps(v)) {
          ++hits;
          hit_poly = &f;
          hit_index = static_cast<long>(k);
        }
      }
    }
    if (hits == 1) return AlgebraicNumber::from_irreducible(*hit_poly, hit_index);
  }
  throw PrecisionExhausted("could not attribute combined value to a unique root");
}

// For degree-preserving maps (scale, shift, inverse) the image of an
// irreducible polynomial is irreducible, so no factorization is needed.
template <typename ValueAt>
AlgebraicNumber locate_single(const IntPoly& poly, ValueAt&& value_at, long ceiling) {
  std::vector<IntPoly> one{poly};
  return locate(one, std::forward<ValueAt>(value_at), ceiling);
}

Rat rat_pow_exact(const Rat& x, unsigned long n) {
  Rat r(1), base = x;
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

}  // namespace

AlgebraicNumber pow(const AlgebraicNumber& a, unsigned long n) {
  if (n == 0) return AlgebraicNumber::from_int(1);
  if (n == 1) return a;
  if (a.is_rational()) return AlgebraicNumber::from_rat(rat_pow_exact(a.rational_value(), n));
  long ceiling = default_ceiling();
  IntPoly res = exact::compose_power(a.minpoly(), n);
  std::vector<IntPoly> factors = exact::factor_distinct_irreducible(res);
  return locate(factors,
                [&](long bits) { return eval_power_ball(a, n, bits, ceiling); },
                ceiling);
}

AlgebraicNumber scale(const AlgebraicNumber& a, const Rat& c) {
  if (c == 0) throw PreconditionError("scale by zero");
  if (a.is_rational()) return AlgebraicNumber::from_rat(Rat(a.rational_value() * c));
  long ceiling = default_ceiling();
  IntPoly img = exact::compose_scale(a.minpoly(), c);
  return locate_single(img,
                       [&](long bits) {
                         return a.enclosure(bits, ceiling).mul_real(
                             RealBall::from_rat(c, bits + 16));
                       },
                       ceiling);
}

AlgebraicNumber shift(const AlgebraicNumber& a, const Rat& c) {
  if (c == 0) return a;
  if (a.is_rational()) return AlgebraicNumber::from_rat(Rat(a.rational_value() + c));
  long ceiling = default_ceiling();
  // p(x - c), denominators cleared
  const IntPoly& p = a.minpoly();
  long d = p.degree();
  std::vector<Rat> acc{Rat(0)};
  // Horner in (x - c): acc(x) = acc(x)*(x-c) + p_i
  for (long i = d; i >= 0; --i) {
    std::vector<Rat> next(acc.size() + 1, Rat(0));
    for (size_t k = 0; k < acc.size(); ++k) {
      next[k + 1] += acc[k];
      next[k] -= acc[k] * c;
    }
    next[0] += Rat(p.coeff(i));
    acc = std::move(next);
  }
  while (acc.size() > 1 && acc.back() == 0) acc.pop_back();
  Int den(1);
  for (const auto& r : acc) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), r.get_den().get_mpz_t());
  std::vector<Int> ic(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) {
    Rat scaled = acc[i] * Rat(den);
    ic[i] = scaled.get_num();
  }
  IntPoly img = IntPoly(std::move(ic)).primitive_part();
  return locate_single(img,
                       [&](long bits) {
                         ComplexBall e = a.enclosure(bits, ceiling);
                         return ComplexBall(e.re() + RealBall::from_rat(c, bits + 16), e.im());
                       },
                       ceiling);
}

AlgebraicNumber negate(const AlgebraicNumber& a) { return scale(a, Rat(-1)); }

AlgebraicNumber inverse(const AlgebraicNumber& a) {
  if (a.is_zero()) throw PreconditionError("inverse of zero");
  if (a.is_rational()) return AlgebraicNumber::from_rat(Rat(1 / a.rational_value()));
  long ceiling = default_ceiling();
  IntPoly img = exact::compose_inverse(a.minpoly());
  return locate_single(img,
                       [&](long bits) {
                         ComplexBall one = ComplexBall::from_real(RealBall::from_long(1, bits));
                         return one / a.enclosure(bits, ceiling);
                       },
                       ceiling);
}

AlgebraicNumber mul(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_zero() || b.is_zero()) return AlgebraicNumber::from_int(0);
  if (a.is_rational()) return scale(b, a.rational_value());
  if (b.is_rational()) return scale(a, b.rational_value());
  long ceiling = default_ceiling();
  IntPoly res = exact::compose_product(a.minpoly(), b.minpoly());
  std::vector<IntPoly> factors = exact::factor_distinct_irreducible(res);
  return locate(factors,
                [&](long bits) { return a.enclosure(bits, ceiling) * b.enclosure(bits, ceiling); },
                ceiling);
}

AlgebraicNumber div(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (b.is_zero()) throw PreconditionError("division by zero");
  if (b.is_rational()) return scale(a, Rat(1 / b.rational_value()));
  return mul(a, inverse(b));
}

AlgebraicNumber add(const AlgebraicNumber& a, const AlgebraicNumber& b) {
  if (a.is_rational()) return shift(b, a.rational_value());
  if (b.is_rational()) return shift(a, b.rational_value());
  long ceiling = default_ceiling();
  IntPoly res = exact::compose_sum(a.minpoly(), b.minpoly());
  std::vector<IntPoly> factors = exact::factor_distinct_irreducible(res);
  return locate(factors,
                [&](long bits) { return a.enclosure(bits, ceiling) + b.enclosure(bits, ceiling); },
                ceiling);
}

ModulusClass compare_modulus_to_one(const AlgebraicNumber& a, long ceiling) {
  if (a.is_zero()) return ModulusClass::inside;
  if (a.is_rational()) {
    Rat v = a.rational_value();
    Rat av = abs(v);
    if (av < 1) return ModulusClass::inside;
    if (av > 1) return ModulusClass::outside;
    return ModulusClass::on;
  }
  const IntPoly& p = a.minpoly();
  IntPoly rev = p.reversed().primitive_part();
  bool self_reciprocal = (rev == p) || (rev == -p);
  if (!self_reciprocal) {
    // no root can lie on the unit circle: refine until |a| separates from 1
    for (long bits = 64; bits <= ceiling; bits *= 2) {
      RealBall m = a.enclosure(bits, ceiling).abs();
      if (m.upper() < 1) return ModulusClass::inside;
      if (m.lower() > 1) return ModulusClass::outside;
    }
    throw PrecisionExhausted("modulus trichotomy exhausted precision");
  }
  // self-reciprocal: 1/conj(a) is also a root; |a| = 1 iff it is a itself
  Rat sep = roots::separation_lower_bound(p);
  for (long bits = 64; bits <= ceiling; bits *= 2) {
    ComplexBall e = a.enclosure(bits, ceiling);
    if (e.contains_zero()) continue;
    ComplexBall inv_conj(bits);
    try {
      inv_conj = ComplexBall::from_real(RealBall::from_long(1, bits)) / e.conj();
    } catch (const IndeterminateError&) {
      continue;  // |e|^2 lower bound not yet positive; refine
    }
    if (!e.overlaps(inv_conj)) {
      // |a| != 1; decide the side
      for (long b2 = bits; b2 <= ceiling; b2 *= 2) {
        RealBall m = a.enclosure(b2, ceiling).abs();
        if (m.upper() < 1) return ModulusClass::inside;
        if (m.lower() > 1) return ModulusClass::outside;
      }
      throw PrecisionExhausted("modulus trichotomy exhausted precision");
    }
    Rat w1 = std::max(e.re().rad_upper(), e.im().rad_upper());
    Rat w2 = std::max(inv_conj.re().rad_upper(), inv_conj.im().rad_upper());
    if (w1 * 4 < sep && w2 * 4 < sep) {
      // both tiny and overlapping: 1/conj(a) and a enclose the same root
      return ModulusClass::on;
    }
  }
  throw PrecisionExhausted("modulus trichotomy exhausted precision");
}

std::optional<unsigned long> root_of_unity_order(const AlgebraicNumber& a) {
  if (a.is_zero()) throw PreconditionError("root_of_unity_order of zero");
  if (a.is_rational()) {
    Rat v = a.rational_value();
    if (v == 1) return 1;
    if (v == -1) return 2;
    return std::nullopt;
  }
  unsigned long d = static_cast<unsigned long>(a.degree());
  // phi(m) = d forces m <= 2 d^2 + 2
  for (unsigned long m = 2; m <= 2 * d * d + 2; ++m) {
    if (exact::euler_phi(m) != d) continue;
    if (exact::cyclotomic(m) == a.minpoly()) return m;
  }
  return std::nullopt;
}

std::optional<Rat> eval_power_exact(const AlgebraicNumber& a, unsigned long n) {
  if (!a.is_rational()) return std::nullopt;
  return rat_pow_exact(a.rational_value(), n);
}

ComplexBall eval_power_ball(const AlgebraicNumber& a, unsigned long n, long bits, long ceiling) {
  if (a.is_rational()) {
    Rat v = rat_pow_exact(a.rational_value(), n);
    long need = std::max<long>(bits + 32, static_cast<long>(mpz_sizeinbase(v.get_num().get_mpz_t(), 2)) + 32);
    return ComplexBall::from_real(RealBall::from_rat(v, need));
  }
  // precision pre-allocation: n * log2(max(1,|a|)) + guard
  RealBall mod = a.enclosure(64, ceiling).abs();
  long mag_bits = 0;
  Rat hi = mod.upper();
  if (hi > 1) {
    mag_bits = static_cast<long>(mpz_sizeinbase(hi.get_num().get_mpz_t(), 2)) -
               static_cast<long>(mpz_sizeinbase(hi.get_den().get_mpz_t(), 2)) + 1;
    if (mag_bits < 0) mag_bits = 0;
  }
  for (long work = bits + static_cast<long>(n) * (mag_bits + 1) / 1 + 64;; work *= 2) {
    if (work > ceiling) throw PrecisionExhausted("eval_power_ball exhausted precision");
    ComplexBall base = a.enclosure(work, ceiling);
    ComplexBall val = base.pow_ui(n);
    Rat target;
    {
      Int t(1);
      mpz_mul_2exp(t.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(bits > 0 ? bits : 0));
      target = make_rat(1, t);
    }
    if (val.re().rad_upper() <= target && val.im().rad_upper() <= target) return val;
  }
}

Cmp compare_with_rat(const AlgebraicNumber& a, const Rat& c, long ceiling) {
  if (a.is_rational()) {
    int s = cmp(a.rational_value(), c);
    if (s < 0) return Cmp::less;
    if (s > 0) return Cmp::greater;
    return Cmp::indeterminate;  // equal: caller distinguishes via is_rational
  }
  if (!a.is_real()) throw PreconditionError("ordering a non-real number");
  for (long bits = 64; bits <= ceiling; bits *= 2) {
    RealBall re = a.enclosure(bits, ceiling).re();
    if (re.upper() < c) return Cmp::less;
    if (re.lower() > c) return Cmp::greater;
  }
  throw PrecisionExhausted("compare_with_rat exhausted precision");
}

}  // namespace algebraic
}  // namespace dl
