// SPDX-License-Identifier: Apache-2.0
#include "diophlab/interval.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace dl {
namespace interval {

namespace {
constexpr mpfr_prec_t kRadPrec = 32;

// |m| rounded up into a kRadPrec temporary.
Mpfr abs_upper(mpfr_srcptr m) {
  Mpfr r(kRadPrec);
  mpfr_abs(r.get(), m, MPFR_RNDU);
  return r;
}
}  // namespace

long precision_ceiling_from_env() {
  const char* s = std::getenv("DIOPHLAB_PREC_CEILING");
  if (!s) return kDefaultPrecisionCeiling;
  long v = std::atol(s);
  return v >= 64 ? v : kDefaultPrecisionCeiling;
}

RealBall::RealBall(long prec) : mid_(prec), rad_(kRadPrec), prec_(prec) {
  if (prec < 2) throw PreconditionError("ball precision must be >= 2");
}

void RealBall::bound_rounding(int ternary) {
  if (ternary == 0) return;
  if (mpfr_zero_p(mid_.get())) {
    // rounded to zero inexactly: bound by smallest representable magnitude
    Mpfr ulp(kRadPrec);
    mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_emin() + 2, MPFR_RNDU);
    mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
    return;
  }
  Mpfr ulp(kRadPrec);
  mpfr_set_ui_2exp(ulp.get(), 1, mpfr_get_exp(mid_.get()) - prec_, MPFR_RNDU);
  mpfr_add(rad_.get(), rad_.get(), ulp.get(), MPFR_RNDU);
}

RealBall RealBall::from_int(const Int& n, long prec) {
  RealBall b(prec);
  int t = mpfr_set_z(b.mid_.get(), n.get_mpz_t(), MPFR_RNDN);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::from_rat(const Rat& q, long prec) {
  RealBall b(prec);
  int t = mpfr_set_q(b.mid_.get(), q.get_mpq_t(), MPFR_RNDN);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::from_long(long n, long prec) {
  RealBall b(prec);
  int t = mpfr_set_si(b.mid_.get(), n, MPFR_RNDN);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::from_mpfr_exact(mpfr_srcptr m, long prec) {
  RealBall b(std::max<long>(prec, mpfr_get_prec(m)));
  mpfr_set(b.mid_.get(), m, MPFR_RNDN);
  return b;
}

RealBall RealBall::from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, long prec) {
  if (mpfr_cmp(lo, hi) > 0) throw PreconditionError("from_endpoints: lo > hi");
  RealBall b(prec);
  mpfr_add(b.mid_.get(), lo, hi, MPFR_RNDN);
  mpfr_div_2si(b.mid_.get(), b.mid_.get(), 1, MPFR_RNDN);
  // radius = max(mid - lo, hi - mid), rounded up from the stored midpoint
  Mpfr r1(kRadPrec), r2(kRadPrec);
  mpfr_sub(r1.get(), b.mid_.get(), lo, MPFR_RNDU);
  mpfr_sub(r2.get(), hi, b.mid_.get(), MPFR_RNDU);
  mpfr_max(b.rad_.get(), r1.get(), r2.get(), MPFR_RNDU);
  if (mpfr_sgn(b.rad_.get()) < 0) mpfr_set_zero(b.rad_.get(), 1);
  return b;
}

RealBall RealBall::error_2exp(long e, long prec) {
  RealBall b(prec);
  mpfr_set_ui_2exp(b.rad_.get(), 1, e, MPFR_RNDU);
  return b;
}

RealBall RealBall::at_precision(long prec) const {
  RealBall b(prec);
  int t = mpfr_set(b.mid_.get(), mid_.get(), MPFR_RNDN);
  mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::operator-() const {
  RealBall b(*this);
  mpfr_neg(b.mid_.get(), b.mid_.get(), MPFR_RNDN);  // exact
  return b;
}

RealBall RealBall::operator+(const RealBall& o) const {
  RealBall b(std::max(prec_, o.prec_));
  int t = mpfr_add(b.mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  mpfr_add(b.rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::operator-(const RealBall& o) const {
  RealBall b(std::max(prec_, o.prec_));
  int t = mpfr_sub(b.mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  mpfr_add(b.rad_.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::operator*(const RealBall& o) const {
  RealBall b(std::max(prec_, o.prec_));
  int t = mpfr_mul(b.mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  // rad = |mx|*ry + |my|*rx + rx*ry
  Mpfr ax = abs_upper(mid_.get()), ay = abs_upper(o.mid_.get());
  Mpfr t1(kRadPrec), t2(kRadPrec), t3(kRadPrec);
  mpfr_mul(t1.get(), ax.get(), o.rad_.get(), MPFR_RNDU);
  mpfr_mul(t2.get(), ay.get(), rad_.get(), MPFR_RNDU);
  mpfr_mul(t3.get(), rad_.get(), o.rad_.get(), MPFR_RNDU);
  mpfr_add(b.rad_.get(), t1.get(), t2.get(), MPFR_RNDU);
  mpfr_add(b.rad_.get(), b.rad_.get(), t3.get(), MPFR_RNDU);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::operator/(const RealBall& o) const {
  // require 0 outside o: |my| > ry
  Mpfr amy(kRadPrec);
  mpfr_abs(amy.get(), o.mid_.get(), MPFR_RNDD);
  if (mpfr_cmp(amy.get(), o.rad_.get()) <= 0)
    throw IndeterminateError("ball division: denominator enclosure contains zero");
  RealBall b(std::max(prec_, o.prec_));
  int t = mpfr_div(b.mid_.get(), mid_.get(), o.mid_.get(), MPFR_RNDN);
  // rad = (rx + |q| ry) / (|my| - ry), with |q| an upper bound on |mx/my|
  Mpfr aq = abs_upper(b.mid_.get());
  Mpfr num(kRadPrec), den(kRadPrec), adj(kRadPrec);
  // |q| may itself be rounded down vs |mx/my|; inflate by one ulp of q
  if (!mpfr_zero_p(b.mid_.get())) {
    mpfr_set_ui_2exp(adj.get(), 1, mpfr_get_exp(b.mid_.get()) - b.prec_, MPFR_RNDU);
    mpfr_add(aq.get(), aq.get(), adj.get(), MPFR_RNDU);
  }
  mpfr_mul(num.get(), aq.get(), o.rad_.get(), MPFR_RNDU);
  mpfr_add(num.get(), num.get(), rad_.get(), MPFR_RNDU);
  mpfr_sub(den.get(), amy.get(), o.rad_.get(), MPFR_RNDD);
  mpfr_div(b.rad_.get(), num.get(), den.get(), MPFR_RNDU);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::add_int(const Int& n) const {
  RealBall b(prec_);
  int t = mpfr_add_z(b.mid_.get(), mid_.get(), n.get_mpz_t(), MPFR_RNDN);
  mpfr_set(b.rad_.get(), rad_.get(), MPFR_RNDU);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::mul_int(const Int& n) const {
  RealBall b(prec_);
  int t = mpfr_mul_z(b.mid_.get(), mid_.get(), n.get_mpz_t(), MPFR_RNDN);
  Mpfr an(kRadPrec);
  mpfr_set_z(an.get(), n.get_mpz_t(), MPFR_RNDA);  // |n| rounded up
  mpfr_abs(an.get(), an.get(), MPFR_RNDU);
  mpfr_mul(b.rad_.get(), rad_.get(), an.get(), MPFR_RNDU);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::div_int(const Int& n) const {
  if (n == 0) throw PreconditionError("division by zero");
  RealBall b(prec_);
  int t = mpfr_div_z(b.mid_.get(), mid_.get(), n.get_mpz_t(), MPFR_RNDN);
  Mpfr an(kRadPrec);
  mpfr_set_z(an.get(), n.get_mpz_t(), MPFR_RNDZ);  // |n| rounded down
  mpfr_abs(an.get(), an.get(), MPFR_RNDU);
  mpfr_div(b.rad_.get(), rad_.get(), an.get(), MPFR_RNDU);
  b.bound_rounding(t);
  return b;
}

RealBall RealBall::mul_2exp(long e) const {
  RealBall b(*this);
  mpfr_mul_2si(b.mid_.get(), b.mid_.get(), e, MPFR_RNDN);  // exact
  mpfr_mul_2si(b.rad_.get(), b.rad_.get(), e, MPFR_RNDU);
  return b;
}

RealBall RealBall::abs() const {
  Rat lo = lower(), hi = upper();
  if (lo >= 0) return *this;
  if (hi <= 0) return -*this;
  // straddles zero: |x| in [0, max(-lo, hi)]
  Rat top = std::max(Rat(-lo), hi);
  Mpfr hi_f(prec_), lo_f(prec_);
  mpfr_set_q(hi_f.get(), top.get_mpq_t(), MPFR_RNDU);
  mpfr_set_zero(lo_f.get(), 1);
  return from_endpoints(lo_f.get(), hi_f.get(), prec_);
}

RealBall RealBall::sqrt_nonneg() const {
  Rat hi = upper();
  if (hi < 0) throw PreconditionError("sqrt_nonneg of negative ball");
  Mpfr lo_f(prec_), hi_f(prec_);
  Rat lo = lower();
  if (lo < 0) lo = 0;
  mpfr_set_q(lo_f.get(), lo.get_mpq_t(), MPFR_RNDD);
  if (mpfr_sgn(lo_f.get()) < 0) mpfr_set_zero(lo_f.get(), 1);
  mpfr_set_q(hi_f.get(), hi.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(lo_f.get(), lo_f.get(), MPFR_RNDD);
  mpfr_sqrt(hi_f.get(), hi_f.get(), MPFR_RNDU);
  return from_endpoints(lo_f.get(), hi_f.get(), prec_);
}

RealBall RealBall::log() const {
  Rat lo = lower();
  if (lo <= 0) throw IndeterminateError("log: enclosure not within (0, inf)");
  Mpfr lo_f(prec_), hi_f(prec_);
  mpfr_set_q(lo_f.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_f.get(), upper().get_mpq_t(), MPFR_RNDU);
  mpfr_log(lo_f.get(), lo_f.get(), MPFR_RNDD);
  mpfr_log(hi_f.get(), hi_f.get(), MPFR_RNDU);
  return from_endpoints(lo_f.get(), hi_f.get(), prec_);
}

RealBall RealBall::exp() const {
  Mpfr lo_f(prec_), hi_f(prec_);
  mpfr_set_q(lo_f.get(), lower().get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_f.get(), upper().get_mpq_t(), MPFR_RNDU);
  mpfr_exp(lo_f.get(), lo_f.get(), MPFR_RNDD);
  mpfr_exp(hi_f.get(), hi_f.get(), MPFR_RNDU);
  return from_endpoints(lo_f.get(), hi_f.get(), prec_);
}

RealBall RealBall::pow_ui(unsigned long n) const {
  RealBall acc = from_long(1, prec_);
  RealBall base = *this;
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

RealBall RealBall::root_ui(unsigned long n) const {
  if (n == 0) throw PreconditionError("root_ui(0)");
  if (n == 1) return *this;
  Rat lo = lower();
  if (lo < 0) throw PreconditionError("root_ui of negative ball");
  Mpfr lo_f(prec_), hi_f(prec_);
  mpfr_set_q(lo_f.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_f.get(), upper().get_mpq_t(), MPFR_RNDU);
  mpfr_rootn_ui(lo_f.get(), lo_f.get(), n, MPFR_RNDD);
  mpfr_rootn_ui(hi_f.get(), hi_f.get(), n, MPFR_RNDU);
  return from_endpoints(lo_f.get(), hi_f.get(), prec_);
}

RealBall RealBall::inflate(const Rat& r) const {
  if (r < 0) throw PreconditionError("inflate by negative amount");
  RealBall b(*this);
  Mpfr rf(kRadPrec);
  mpfr_set_q(rf.get(), r.get_mpq_t(), MPFR_RNDU);
  mpfr_add(b.rad_.get(), b.rad_.get(), rf.get(), MPFR_RNDU);
  return b;
}

namespace {
Rat mpfr_to_rat(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rat(0);
  Rat q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}
}  // namespace

Rat RealBall::lower() const { return mpfr_to_rat(mid_.get()) - mpfr_to_rat(rad_.get()); }
Rat RealBall::upper() const { return mpfr_to_rat(mid_.get()) + mpfr_to_rat(rad_.get()); }
Rat RealBall::rad_upper() const { return mpfr_to_rat(rad_.get()); }
Rat RealBall::mid_rat() const { return mpfr_to_rat(mid_.get()); }

bool RealBall::contains(const Rat& x) const { return lower() <= x && x <= upper(); }
bool RealBall::contains_zero() const { return contains(Rat(0)); }

bool RealBall::contained_in(const RealBall& o) const {
  return o.lower() <= lower() && upper() <= o.upper();
}

bool RealBall::overlaps(const RealBall& o) const {
  return !(upper() < o.lower() || o.upper() < lower());
}

std::optional<RealBall> RealBall::intersect(const RealBall& a, const RealBall& b) {
  Rat lo = std::max(a.lower(), b.lower());
  Rat hi = std::min(a.upper(), b.upper());
  if (lo > hi) return std::nullopt;
  long p = std::max(a.prec(), b.prec());
  Mpfr lo_f(p), hi_f(p);
  mpfr_set_q(lo_f.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_f.get(), hi.get_mpq_t(), MPFR_RNDU);
  return from_endpoints(lo_f.get(), hi_f.get(), p);
}

RealBall RealBall::hull(const RealBall& a, const RealBall& b) {
  Rat lo = std::min(a.lower(), b.lower());
  Rat hi = std::max(a.upper(), b.upper());
  long p = std::max(a.prec(), b.prec());
  Mpfr lo_f(p), hi_f(p);
  mpfr_set_q(lo_f.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_f.get(), hi.get_mpq_t(), MPFR_RNDU);
  return from_endpoints(lo_f.get(), hi_f.get(), p);
}

std::string RealBall::mid_decimal(int digits) const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.*RNg", digits, mid_.get());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::string RealBall::rad_decimal() const {
  char* s = nullptr;
  mpfr_asprintf(&s, "%.2RUe", rad_.get());
  std::string out(s);
  mpfr_free_str(s);
  return out;
}

std::string RealBall::to_string(int digits) const {
  std::ostringstream os;
  os << mid_decimal(digits) << " ± " << rad_decimal() << " @ " << prec_;
  return os.str();
}

Cmp compare(const RealBall& a, const RealBall& b) {
  if (a.upper() < b.lower()) return Cmp::less;
  if (b.upper() < a.lower()) return Cmp::greater;
  return Cmp::indeterminate;
}

ComplexBall ComplexBall::operator+(const ComplexBall& o) const {
  return ComplexBall(re_ + o.re_, im_ + o.im_);
}

ComplexBall ComplexBall::operator-(const ComplexBall& o) const {
  return ComplexBall(re_ - o.re_, im_ - o.im_);
}

ComplexBall ComplexBall::operator*(const ComplexBall& o) const {
  return ComplexBall(re_ * o.re_ - im_ * o.im_, re_ * o.im_ + im_ * o.re_);
}

ComplexBall ComplexBall::operator/(const ComplexBall& o) const {
  RealBall den = o.abs_squared();
  ComplexBall num = *this * o.conj();
  return ComplexBall(num.re_ / den, num.im_ / den);
}

ComplexBall ComplexBall::mul_real(const RealBall& r) const {
  return ComplexBall(re_ * r, im_ * r);
}

ComplexBall ComplexBall::mul_int(const Int& n) const {
  return ComplexBall(re_.mul_int(n), im_.mul_int(n));
}

ComplexBall ComplexBall::pow_ui(unsigned long n) const {
  ComplexBall acc = from_real(RealBall::from_long(1, prec()));
  ComplexBall base = *this;
  while (n) {
    if (n & 1) acc = acc * base;
    n >>= 1;
    if (n) base = base * base;
  }
  return acc;
}

RealBall ComplexBall::abs_squared() const { return re_ * re_ + im_ * im_; }

RealBall ComplexBall::abs() const {
  if (is_real_exact()) return re_.abs();
  return abs_squared().sqrt_nonneg();
}

ComplexBall ComplexBall::at_precision(long prec) const {
  return ComplexBall(re_.at_precision(prec), im_.at_precision(prec));
}

std::string ComplexBall::to_string(int digits) const {
  std::ostringstream os;
  os << re_.to_string(digits);
  if (!(im_.is_exact() && im_.contains_zero())) os << " + i*(" << im_.to_string(digits) << ")";
  return os.str();
}

namespace {

Rat rat_floor(const Rat& x) {
  Int f;
  mpz_fdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return Rat(f);
}
Rat rat_ceil(const Rat& x) {
  Int f;
  mpz_cdiv_q(f.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
  return Rat(f);
}

// Minimal-denominator rational in the closed interval [lo, hi] via the
// continued-fraction walk.
Rat simplest_in(const Rat& lo, const Rat& hi) {
  Rat clo = rat_ceil(lo);
  if (clo <= hi) {
    // an integer lies inside; the smallest-denominator value is an integer.
    // Pick the one closest to zero for determinism.
    Rat flo = rat_floor(hi);
    if (clo <= 0 && 0 <= flo) return Rat(0);
    return (clo > 0) ? clo : flo;
  }
  // lo, hi in (n, n+1) for n = floor(lo)
  Rat n = rat_floor(lo);
  Rat inner = simplest_in(Rat(1) / (hi - n), Rat(1) / (lo - n));
  return n + Rat(1) / inner;
}

}  // namespace

Rat simplest_rational_in(const Rat& lo, const Rat& hi) {
  if (lo > hi) throw PreconditionError("simplest_rational_in: empty interval");
  return simplest_in(lo, hi);
}

std::optional<Rat> recognize_rational(const RealBall& x, const Int& den_bound) {
  if (den_bound < 1) throw PreconditionError("recognize_rational: den_bound < 1");
  Rat lo = x.lower(), hi = x.upper();
  Rat r = simplest_rational_in(lo, hi);
  if (r.get_den() > den_bound) return std::nullopt;  // minimal denominator too big
  // Uniqueness: the Farey neighbours of r at order den_bound must lie outside.
  const Int p = r.get_num(), q = r.get_den();
  const Int& B = den_bound;
  if (q == 1) {
    // neighbours of integer p at order B: p - 1/B and p + 1/B
    Rat left = r - make_rat(1, B);
    Rat right = r + make_rat(1, B);
    if ((left >= lo && left <= hi) || (right >= lo && right <= hi)) return std::nullopt;
    return r;
  }
  // Solve p*v ≡ ±1 (mod q) for the neighbour denominators.
  Int pinv;
  if (mpz_invert(pinv.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t()) == 0)
    throw Error("internal: non-invertible numerator in Farey step");
  auto neighbour = [&](bool leftside) -> Rat {
    // left: p*v - u*q = 1 with v ≡ p^{-1} (mod q); right: u*q - p*v = 1
    Int res = leftside ? pinv : (q - pinv % q) % q;
    if (res == 0) res = q;
    // largest v <= B with v ≡ res (mod q)
    Int v = res + ((B - res) / q) * q;
    Int u = leftside ? Int((p * v - 1) / q) : Int((p * v + 1) / q);
    return make_rat(u, v);
  };
  Rat left = neighbour(true);
  Rat right = neighbour(false);
  if ((left >= lo && left <= hi) || (right >= lo && right <= hi)) return std::nullopt;
  return r;
}

RealBall eval_poly(const exact::IntPoly& p, const RealBall& x) {
  RealBall acc = RealBall::zero(x.prec());
  for (long i = p.degree(); i >= 0; --i) acc = acc * x + RealBall::from_int(p.coeff(i), x.prec());
  return acc;
}

ComplexBall eval_poly(const exact::IntPoly& p, const ComplexBall& x) {
  ComplexBall acc(x.prec());
  for (long i = p.degree(); i >= 0; --i) {
    acc = acc * x;
    acc = ComplexBall(acc.re().add_int(p.coeff(i)), acc.im());
  }
  return acc;
}

}  // namespace interval
}  // namespace dl
