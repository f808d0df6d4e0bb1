// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dl {

using Int = mpz_class;
using Rat = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct ParseError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
// Raised when a factorization/irreducibility request exceeds the degree cap.
struct DegreeCapError : Error {
  using Error::Error;
};
// Raised when a predicate cannot be certified below the precision ceiling.
struct PrecisionExhausted : Error {
  using Error::Error;
};
// Raised when a ball operation's precondition cannot be certified at the
// current precision (retry at higher precision may succeed).
struct IndeterminateError : Error {
  using Error::Error;
};

Rat make_rat(const Int& num, const Int& den);
Rat parse_rat(const std::string& s);  // "p/q" or "p"
std::string rat_to_string(const Rat& r);

namespace exact {

// Univariate polynomial over Z, coefficients in ascending degree order.
// The zero polynomial has an empty coefficient vector; otherwise the last
// coefficient is nonzero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Int> coeffs);
  IntPoly(std::initializer_list<long> coeffs);

  static IntPoly zero() { return IntPoly(); }
  static IntPoly constant(Int c);
  static IntPoly x();

  bool is_zero() const { return coeffs_.empty(); }
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  const Int& coeff(long i) const;  // 0 outside range
  const Int& leading() const;
  const std::vector<Int>& coeffs() const { return coeffs_; }

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const { return coeffs_ == o.coeffs_; }

  IntPoly mul_scalar(const Int& c) const;
  IntPoly shift_up(long k) const;  // multiply by x^k
  IntPoly derivative() const;
  // Reverse coefficient order: x^deg * p(1/x).
  IntPoly reversed() const;
  // p(-x)
  IntPoly negate_variable() const;

  Int eval(const Int& x) const;
  Rat eval(const Rat& x) const;

  // Content carries the sign of the leading coefficient, so primitive parts
  // have positive leading coefficient.
  Int content() const;
  IntPoly primitive_part() const;

  Int l2_norm_squared() const;
  Int height() const;  // max |coeff|

  std::string to_string() const;  // "c0,c1,...,cd"
  static IntPoly parse(const std::string& s);

 private:
  void normalize();
  std::vector<Int> coeffs_;
};

// Quotient of exact division in Z[x]; nullopt if b does not divide a.
std::optional<IntPoly> div_exact(const IntPoly& a, const IntPoly& b);

// Primitive gcd with positive leading coefficient (gcd over Q cleared to Z).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

IntPoly squarefree_part(const IntPoly& p);

// Resultant of two nonzero polynomials, by subresultant PRS.
Int resultant(const IntPoly& a, const IntPoly& b);

// disc(p) = (-1)^{d(d-1)/2} Res(p, p') / lc(p)
Rat discriminant(const IntPoly& p);

// A polynomial in y whose coefficients are polynomials in x; entry k is the
// coefficient of y^k.  Used to build minimal polynomials of combined
// algebraic numbers via Res_y.
using BivarPoly = std::vector<IntPoly>;

// Resultant with respect to y, as a polynomial in x (computed by evaluation
// at integer points and exact interpolation).
IntPoly resultant_y(const BivarPoly& a, const BivarPoly& b);

// Minimal-polynomial candidate constructions (results may be reducible or
// non-squarefree; callers factor and select).
IntPoly compose_power(const IntPoly& p, unsigned long n);       // roots alpha^n
IntPoly compose_scale(const IntPoly& p, const Rat& c);          // roots c*alpha
IntPoly compose_product(const IntPoly& p, const IntPoly& q);    // roots alpha*beta
IntPoly compose_sum(const IntPoly& p, const IntPoly& q);        // roots alpha+beta
IntPoly compose_inverse(const IntPoly& p);                      // roots 1/alpha

IntPoly cyclotomic(unsigned long m);
unsigned long euler_phi(unsigned long m);

// Degree cap for factorization and irreducibility testing.
inline constexpr long kFactorDegreeCap = 16;

// True iff p (primitive, degree >= 1) is irreducible over Q.
// Throws DegreeCapError above kFactorDegreeCap.
bool is_irreducible(const IntPoly& p);

// Irreducible factors of p (each primitive, positive leading coefficient),
// without multiplicities, sorted deterministically.
// Throws DegreeCapError above kFactorDegreeCap.
std::vector<IntPoly> factor_distinct_irreducible(const IntPoly& p);

}  // namespace exact
}  // namespace dl
