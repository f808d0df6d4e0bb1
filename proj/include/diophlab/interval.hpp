// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <mpfr.h>

#include <optional>
#include <string>
#include <utility>

#include "diophlab/exact.hpp"

namespace dl {
namespace interval {

// Default ceiling for precision-escalation loops, in bits.  Overridable per
// call site; the CLI reads DIOPHLAB_PREC_CEILING.
inline constexpr long kDefaultPrecisionCeiling = 1L << 16;
inline constexpr long kDefaultPrecision = 128;

long precision_ceiling_from_env();

// RAII wrapper over mpfr_t.
class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = 64) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Mpfr(const Mpfr& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);  // same precision: exact
  }
  Mpfr(Mpfr&& o) noexcept {
    mpfr_init2(v_, 2);
    mpfr_swap(v_, o.v_);
  }
  Mpfr& operator=(const Mpfr& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Mpfr& operator=(Mpfr&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Mpfr() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

enum class Cmp { less, greater, indeterminate };

// Real midpoint-radius ball with dyadic midpoint and nonnegative dyadic
// radius; every operation produces an enclosure of the exact image.
class RealBall {
 public:
  RealBall() : RealBall(kDefaultPrecision) {}
  explicit RealBall(long prec);

  static RealBall zero(long prec) { return RealBall(prec); }
  static RealBall from_int(const Int& n, long prec);
  static RealBall from_rat(const Rat& q, long prec);
  static RealBall from_long(long n, long prec);
  // Exact dyadic midpoint, zero radius.
  static RealBall from_mpfr_exact(mpfr_srcptr m, long prec);
  static RealBall from_endpoints(mpfr_srcptr lo, mpfr_srcptr hi, long prec);
  // Ball [-r, r] with r = 2^e.
  static RealBall error_2exp(long e, long prec);

  long prec() const { return prec_; }
  mpfr_srcptr mid() const { return mid_.get(); }
  mpfr_srcptr rad() const { return rad_.get(); }
  bool is_exact() const { return mpfr_zero_p(rad_.get()); }

  RealBall at_precision(long prec) const;

  RealBall operator-() const;
  RealBall operator+(const RealBall& o) const;
  RealBall operator-(const RealBall& o) const;
  RealBall operator*(const RealBall& o) const;
  RealBall operator/(const RealBall& o) const;  // IndeterminateError if 0 in o

  RealBall add_int(const Int& n) const;
  RealBall mul_int(const Int& n) const;
  RealBall div_int(const Int& n) const;
  RealBall mul_2exp(long e) const;  // exact scaling
  RealBall abs() const;
  RealBall sqrt_nonneg() const;  // enclosure of sqrt over ball ∩ [0, inf)
  RealBall log() const;          // IndeterminateError unless ball ⊂ (0, inf)
  RealBall exp() const;
  RealBall pow_ui(unsigned long n) const;
  // x^(1/n) for x ⊂ [0, inf), n >= 1 (monotone, endpoint-rounded).
  RealBall root_ui(unsigned long n) const;
  // Widen radius by r (r >= 0 exact rational).
  RealBall inflate(const Rat& r) const;

  Rat lower() const;  // exact mid - rad
  Rat upper() const;  // exact mid + rad
  Rat rad_upper() const;
  Rat mid_rat() const;

  bool contains(const Rat& x) const;
  bool contains_zero() const;
  // True if this ball is a subset of o (exact endpoint comparison).
  bool contained_in(const RealBall& o) const;
  bool overlaps(const RealBall& o) const;

  // Enclosure of the intersection; nullopt if provably disjoint.
  static std::optional<RealBall> intersect(const RealBall& a, const RealBall& b);
  static RealBall hull(const RealBall& a, const RealBall& b);

  std::string to_string(int digits = 12) const;  // "m ± r @ bits"
  std::string mid_decimal(int digits) const;
  std::string rad_decimal() const;  // rounded up, 3 significant digits

 private:
  friend class ComplexBall;
  void bound_rounding(int ternary);  // add one ulp of mid_ to rad_ if inexact

  Mpfr mid_;
  Mpfr rad_;
  long prec_;
};

Cmp compare(const RealBall& a, const RealBall& b);

// Complex ball as a rectangular pair of real balls.
class ComplexBall {
 public:
  ComplexBall() = default;
  explicit ComplexBall(long prec) : re_(prec), im_(prec) {}
  ComplexBall(RealBall re, RealBall im) : re_(std::move(re)), im_(std::move(im)) {}
  static ComplexBall from_real(RealBall re) {
    long p = re.prec();
    return ComplexBall(std::move(re), RealBall::zero(p));
  }

  const RealBall& re() const { return re_; }
  const RealBall& im() const { return im_; }
  long prec() const { return re_.prec(); }

  ComplexBall operator-() const { return ComplexBall(-re_, -im_); }
  ComplexBall conj() const { return ComplexBall(re_, -im_); }
  ComplexBall operator+(const ComplexBall& o) const;
  ComplexBall operator-(const ComplexBall& o) const;
  ComplexBall operator*(const ComplexBall& o) const;
  ComplexBall operator/(const ComplexBall& o) const;
  ComplexBall mul_real(const RealBall& r) const;
  ComplexBall mul_int(const Int& n) const;
  ComplexBall pow_ui(unsigned long n) const;

  RealBall abs() const;
  RealBall abs_squared() const;
  ComplexBall at_precision(long prec) const;

  bool contains_zero() const { return re_.contains_zero() && im_.contains_zero(); }
  bool is_real_exact() const { return im_.is_exact() && im_.contains_zero(); }

  // Disk semantics for root enclosures: true if the rectangles overlap.
  bool overlaps(const ComplexBall& o) const {
    return re_.overlaps(o.re()) && im_.overlaps(o.im());
  }
  bool contained_in(const ComplexBall& o) const {
    return re_.contained_in(o.re()) && im_.contained_in(o.im());
  }

  std::string to_string(int digits = 12) const;

 private:
  RealBall re_, im_;
};

// The unique rational with denominator <= den_bound inside the ball, if
// exactly one exists; nullopt if none or ambiguous.
std::optional<Rat> recognize_rational(const RealBall& x, const Int& den_bound);

// Simplest rational (minimal denominator) in the closed interval [lo, hi].
Rat simplest_rational_in(const Rat& lo, const Rat& hi);

// Evaluate an integer polynomial at a real/complex ball (Horner).
RealBall eval_poly(const exact::IntPoly& p, const RealBall& x);
ComplexBall eval_poly(const exact::IntPoly& p, const ComplexBall& x);

}  // namespace interval
}  // namespace dl
