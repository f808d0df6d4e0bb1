// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>

#include "diophlab/exact.hpp"
#include "diophlab/interval.hpp"
#include "diophlab/roots.hpp"

namespace dl {
namespace algebraic {

enum class ModulusClass { inside, on, outside };

// Certified enclosures of all conjugates of a minimal polynomial, in
// canonical order (real part descending, then imaginary part descending).
class ConjugateSet {
 public:
  explicit ConjugateSet(roots::Isolation iso) : iso_(std::move(iso)) {}

  const exact::IntPoly& minpoly() const { return iso_.poly; }
  long count() const { return static_cast<long>(iso_.disks.size()); }
  const interval::ComplexBall& root(long i) const { return iso_.disks[static_cast<size_t>(i)]; }
  long conj_index(long i) const { return iso_.conj[static_cast<size_t>(i)]; }
  bool is_real_root(long i) const { return conj_index(i) == i; }
  long bits() const { return iso_.bits; }
  const roots::Isolation& isolation() const { return iso_; }

 private:
  roots::Isolation iso_;
};

// Exact algebraic number: irreducible primitive minimal polynomial with
// positive leading coefficient, plus the canonical index of the root.
// Degree-1 numbers carry exact rational arithmetic end to end.
class AlgebraicNumber {
 public:
  // Validates irreducibility (throws PreconditionError otherwise).
  static AlgebraicNumber from_minpoly_root(const exact::IntPoly& p, long root_index);
  // Trusted constructor for internal callers that already know p is
  // irreducible (skips the validation pass).
  static AlgebraicNumber from_irreducible(exact::IntPoly p, long root_index);
  static AlgebraicNumber from_rat(const Rat& r);
  static AlgebraicNumber from_int(long n) { return from_rat(Rat(n)); }

  const exact::IntPoly& minpoly() const { return minpoly_; }
  long root_index() const { return root_index_; }
  long degree() const { return minpoly_.degree(); }

  bool is_rational() const { return degree() == 1; }
  Rat rational_value() const;  // degree 1 only
  bool is_zero() const { return is_rational() && rational_value() == 0; }
  bool is_one() const { return is_rational() && rational_value() == 1; }

  bool is_algebraic_integer() const { return minpoly_.leading() == 1; }
  Rat trace() const;

  // Enclosure of this root with radius <= 2^-bits.
  interval::ComplexBall enclosure(long bits, long ceiling) const;
  // All conjugates refined to radius <= 2^-bits (cached, monotone).
  std::shared_ptr<const ConjugateSet> conjugates(long bits, long ceiling) const;

  bool is_real() const;
  // Sign of a real algebraic number (+1 or -1; 0 only for zero itself).
  int sign(long ceiling) const;

  bool operator==(const AlgebraicNumber& o) const {
    return minpoly_ == o.minpoly_ && root_index_ == o.root_index_;
  }
  bool operator!=(const AlgebraicNumber& o) const { return !(*this == o); }

  std::string to_string() const;  // literal form

 private:
  AlgebraicNumber() = default;
  exact::IntPoly minpoly_;
  long root_index_ = 0;
  struct Cache {
    std::mutex mu;
    std::shared_ptr<const ConjugateSet> set;
  };
  std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// ---- constructors by arithmetic -------------------------------------------

AlgebraicNumber pow(const AlgebraicNumber& a, unsigned long n);
AlgebraicNumber scale(const AlgebraicNumber& a, const Rat& c);
AlgebraicNumber shift(const AlgebraicNumber& a, const Rat& c);  // a + c
AlgebraicNumber negate(const AlgebraicNumber& a);
AlgebraicNumber inverse(const AlgebraicNumber& a);
AlgebraicNumber mul(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber div(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber add(const AlgebraicNumber& a, const AlgebraicNumber& b);

// ---- predicates ------------------------------------------------------------

// Exact trichotomy of |a| against 1.
ModulusClass compare_modulus_to_one(const AlgebraicNumber& a, long ceiling);

// Smallest m >= 1 with a^m == 1, or nullopt.
std::optional<unsigned long> root_of_unity_order(const AlgebraicNumber& a);

// Certified enclosure of a^n (n >= 0) with radius <= 2^-bits; rational fast
// path is exact up to output rounding.
interval::ComplexBall eval_power_ball(const AlgebraicNumber& a, unsigned long n, long bits,
                                      long ceiling);
// Exact value of a^n when a is rational.
std::optional<Rat> eval_power_exact(const AlgebraicNumber& a, unsigned long n);

// Compare a real algebraic number against a rational (exact).
interval::Cmp compare_with_rat(const AlgebraicNumber& a, const Rat& c, long ceiling);

}  // namespace algebraic
}  // namespace dl
