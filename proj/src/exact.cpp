// SPDX-License-Identifier: Apache-2.0
#include "diophlab/exact.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

namespace dl {

Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw PreconditionError("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      Int n(s);
      return Rat(n);
    }
    Int n(s.substr(0, slash));
    Int d(s.substr(slash + 1));
    return make_rat(n, d);
  } catch (const std::invalid_argument&) {
    throw ParseError("invalid rational literal: " + s);
  }
}

std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

namespace exact {

namespace {
const Int kZero = 0;
}

IntPoly::IntPoly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPoly::IntPoly(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

IntPoly IntPoly::constant(Int c) {
  IntPoly p;
  if (c != 0) p.coeffs_.push_back(std::move(c));
  return p;
}

IntPoly IntPoly::x() { return IntPoly{0, 1}; }

void IntPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

const Int& IntPoly::coeff(long i) const {
  if (i < 0 || i >= static_cast<long>(coeffs_.size())) return kZero;
  return coeffs_[static_cast<size_t>(i)];
}

const Int& IntPoly::leading() const {
  if (is_zero()) return kZero;
  return coeffs_.back();
}

IntPoly IntPoly::operator-() const {
  IntPoly r(*this);
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  std::vector<Int> c(std::max(coeffs_.size(), o.coeffs_.size()), Int(0));
  for (size_t i = 0; i < coeffs_.size(); ++i) c[i] += coeffs_[i];
  for (size_t i = 0; i < o.coeffs_.size(); ++i) c[i] += o.coeffs_[i];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  std::vector<Int> c(coeffs_.size() + o.coeffs_.size() - 1, Int(0));
  for (size_t i = 0; i < coeffs_.size(); ++i)
    for (size_t j = 0; j < o.coeffs_.size(); ++j) c[i + j] += coeffs_[i] * o.coeffs_[j];
  return IntPoly(std::move(c));
}

IntPoly IntPoly::mul_scalar(const Int& k) const {
  if (k == 0) return IntPoly();
  IntPoly r(*this);
  for (auto& c : r.coeffs_) c *= k;
  return r;
}

IntPoly IntPoly::shift_up(long k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<Int> c(static_cast<size_t>(k), Int(0));
  c.insert(c.end(), coeffs_.begin(), coeffs_.end());
  return IntPoly(std::move(c));
}

IntPoly IntPoly::derivative() const {
  if (degree() < 1) return IntPoly();
  std::vector<Int> c(coeffs_.size() - 1);
  for (size_t i = 1; i < coeffs_.size(); ++i) c[i - 1] = coeffs_[i] * Int(i);
  return IntPoly(std::move(c));
}

IntPoly IntPoly::reversed() const {
  std::vector<Int> c(coeffs_.rbegin(), coeffs_.rend());
  return IntPoly(std::move(c));
}

IntPoly IntPoly::negate_variable() const {
  IntPoly r(*this);
  for (size_t i = 1; i < r.coeffs_.size(); i += 2) r.coeffs_[i] = -r.coeffs_[i];
  r.normalize();
  return r;
}

Int IntPoly::eval(const Int& x) const {
  Int acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rat IntPoly::eval(const Rat& x) const {
  Rat acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Int IntPoly::content() const {
  Int g = 0;
  for (const auto& c : coeffs_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (!is_zero() && leading() < 0) g = -g;
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  Int g = content();
  IntPoly r(*this);
  for (auto& c : r.coeffs_) c /= g;
  return r;
}

Int IntPoly::l2_norm_squared() const {
  Int s = 0;
  for (const auto& c : coeffs_) s += c * c;
  return s;
}

Int IntPoly::height() const {
  Int h = 0;
  for (const auto& c : coeffs_) {
    Int a = abs(c);
    if (a > h) h = a;
  }
  return h;
}

std::string IntPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ",";
    os << coeffs_[i].get_str();
  }
  return os.str();
}

IntPoly IntPoly::parse(const std::string& s) {
  std::vector<Int> c;
  std::string tok;
  std::istringstream is(s);
  while (std::getline(is, tok, ',')) {
    size_t b = tok.find_first_not_of(" \t");
    size_t e = tok.find_last_not_of(" \t");
    if (b == std::string::npos) throw ParseError("empty coefficient in polynomial: " + s);
    try {
      c.emplace_back(tok.substr(b, e - b + 1));
    } catch (const std::invalid_argument&) {
      throw ParseError("invalid coefficient in polynomial: " + tok);
    }
  }
  if (c.empty()) throw ParseError("empty polynomial literal");
  return IntPoly(std::move(c));
}

namespace {

// Divide in Q[x]; returns (quotient, remainder) with exact rational arithmetic.
struct RatPoly {
  std::vector<Rat> c;  // ascending
  long degree() const { return static_cast<long>(c.size()) - 1; }
  void normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
};

RatPoly to_rat(const IntPoly& p) {
  RatPoly r;
  r.c.reserve(p.coeffs().size());
  for (const auto& x : p.coeffs()) r.c.emplace_back(x);
  return r;
}

void divmod_rat(const RatPoly& a, const RatPoly& b, RatPoly& q, RatPoly& r) {
  q.c.assign(a.c.size(), Rat(0));
  r = a;
  long db = b.degree();
  while (r.degree() >= db) {
    Rat f = r.c.back() / b.c.back();
    long shift = r.degree() - db;
    q.c[static_cast<size_t>(shift)] = f;
    for (long i = 0; i <= db; ++i)
      r.c[static_cast<size_t>(i + shift)] -= f * b.c[static_cast<size_t>(i)];
    r.normalize();
  }
  q.normalize();
}

}  // namespace

std::optional<IntPoly> div_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw PreconditionError("division by zero polynomial");
  if (a.is_zero()) return IntPoly();
  if (a.degree() < b.degree()) return std::nullopt;
  RatPoly q, r;
  divmod_rat(to_rat(a), to_rat(b), q, r);
  if (!r.c.empty()) return std::nullopt;
  std::vector<Int> ic(q.c.size());
  for (size_t i = 0; i < q.c.size(); ++i) {
    if (q.c[i].get_den() != 1) return std::nullopt;
    ic[i] = q.c[i].get_num();
  }
  return IntPoly(std::move(ic));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.is_zero() ? IntPoly() : b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  // Euclid over Q on primitive parts, cleared back to Z at each step.
  IntPoly u = a.primitive_part();
  IntPoly v = b.primitive_part();
  if (u.degree() < v.degree()) std::swap(u, v);
  while (!v.is_zero()) {
    // pseudo-remainder: lc(v)^(du-dv+1) * u mod v has integer coefficients
    long du = u.degree(), dv = v.degree();
    IntPoly r = u.mul_scalar([&] {
      Int f;
      mpz_pow_ui(f.get_mpz_t(), v.leading().get_mpz_t(), static_cast<unsigned long>(du - dv + 1));
      return f;
    }());
    while (!r.is_zero() && r.degree() >= dv) {
      Int f = r.leading() / v.leading();
      r = r - v.mul_scalar(f).shift_up(r.degree() - dv);
    }
    u = v;
    v = r.is_zero() ? IntPoly() : r.primitive_part();
  }
  return u.primitive_part();
}

IntPoly squarefree_part(const IntPoly& p) {
  if (p.degree() < 1) return p.primitive_part();
  IntPoly g = gcd(p, p.derivative());
  if (g.degree() == 0) return p.primitive_part();
  auto q = div_exact(p.primitive_part(), g);
  if (!q) throw Error("internal: gcd does not divide polynomial");
  return q->primitive_part();
}

namespace {

Rat rat_pow(const Rat& x, unsigned long n) {
  Rat r(1);
  Rat base = x;
  while (n) {
    if (n & 1) r *= base;
    base *= base;
    n >>= 1;
  }
  return r;
}

}  // namespace

Int resultant(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero() || b.is_zero()) throw PreconditionError("resultant of zero polynomial");
  // Euclidean recursion over Q:
  //   Res(A,B) = (-1)^{deg A deg B} lc(B)^{deg A - deg R} Res(B, R),  R = A mod B
  RatPoly u = to_rat(a), v = to_rat(b);
  Rat acc(1);
  bool neg = false;
  while (true) {
    long du = u.degree(), dv = v.degree();
    if (dv == 0) {
      acc *= rat_pow(v.c[0], static_cast<unsigned long>(du));
      break;
    }
    if (du == 0) {
      acc *= rat_pow(u.c[0], static_cast<unsigned long>(dv));
      break;
    }
    if (du < dv) {
      std::swap(u, v);
      if ((du & 1) && (dv & 1)) neg = !neg;
      continue;
    }
    RatPoly q, r;
    divmod_rat(u, v, q, r);
    if (r.c.empty()) return 0;  // common factor of positive degree
    long dr = r.degree();
    acc *= rat_pow(v.c.back(), static_cast<unsigned long>(du - dr));
    if ((du & 1) && (dv & 1)) neg = !neg;
    u = std::move(v);
    v = std::move(r);
  }
  if (neg) acc = -acc;
  if (acc.get_den() != 1) throw Error("internal: resultant is not an integer");
  return acc.get_num();
}

Rat discriminant(const IntPoly& p) {
  if (p.degree() < 1) throw PreconditionError("discriminant needs degree >= 1");
  Int r = resultant(p, p.derivative());
  long d = p.degree();
  Rat disc = make_rat(r, p.leading());
  if (((d * (d - 1)) / 2) % 2 == 1) disc = -disc;
  return disc;
}

namespace {

// Evaluate a bivariate polynomial (coefficients of y^k are IntPoly in x)
// at x = t, producing a univariate IntPoly in y.
IntPoly eval_bivar_at_x(const BivarPoly& a, const Int& t) {
  std::vector<Int> c(a.size());
  for (size_t k = 0; k < a.size(); ++k) c[k] = a[k].eval(t);
  return IntPoly(std::move(c));
}

long bivar_deg_y(const BivarPoly& a) {
  for (long k = static_cast<long>(a.size()) - 1; k >= 0; --k)
    if (!a[static_cast<size_t>(k)].is_zero()) return k;
  return -1;
}

long bivar_deg_x(const BivarPoly& a) {
  long d = -1;
  for (const auto& c : a) d = std::max(d, c.degree());
  return d;
}

}  // namespace

IntPoly resultant_y(const BivarPoly& a, const BivarPoly& b) {
  long dya = bivar_deg_y(a), dyb = bivar_deg_y(b);
  if (dya < 0 || dyb < 0) throw PreconditionError("resultant_y of zero polynomial");
  long dxa = bivar_deg_x(a), dxb = bivar_deg_x(b);
  // Degree bound for the resultant as a polynomial in x.
  long bound = dya * std::max(dxb, 0L) + dyb * std::max(dxa, 0L);
  const IntPoly& lca = a[static_cast<size_t>(dya)];
  const IntPoly& lcb = b[static_cast<size_t>(dyb)];
  // Sample at integer points where neither leading y-coefficient vanishes,
  // then interpolate exactly over Q.
  std::vector<Rat> xs, ys;
  Int t = 0;
  while (static_cast<long>(xs.size()) < bound + 1) {
    if (lca.eval(t) != 0 && lcb.eval(t) != 0) {
      IntPoly ua = eval_bivar_at_x(a, t);
      IntPoly ub = eval_bivar_at_x(b, t);
      xs.emplace_back(t);
      ys.emplace_back(resultant(ua, ub));
    }
    t = (t >= 0) ? Int(-(t + 1)) : Int(-t);  // 0, -1, 1, -2, 2, ...
  }
  // Newton interpolation with exact rationals.
  size_t n = xs.size();
  std::vector<Rat> dd = ys;  // divided differences
  for (size_t j = 1; j < n; ++j)
    for (size_t i = n - 1; i >= j; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - j]);
      if (i == j) break;
    }
  // expand newton form
  std::vector<Rat> poly{dd[n - 1]};
  for (size_t i = n - 1; i-- > 0;) {
    // poly = poly * (x - xs[i]) + dd[i]
    std::vector<Rat> next(poly.size() + 1, Rat(0));
    for (size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= poly[k] * xs[i];
    }
    next[0] += dd[i];
    poly = std::move(next);
  }
  // clear denominators (they should all be 1: the resultant is in Z[x])
  Int den = 1;
  for (const auto& c : poly) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<Int> ic(poly.size());
  for (size_t i = 0; i < poly.size(); ++i) {
    Rat scaled = poly[i] * Rat(den);
    ic[i] = scaled.get_num();
  }
  return IntPoly(std::move(ic));
}

IntPoly compose_power(const IntPoly& p, unsigned long n) {
  if (p.degree() < 1) throw PreconditionError("compose_power needs degree >= 1");
  if (n == 0) return IntPoly{-1, 1};  // alpha^0 = 1
  if (n == 1) return p;
  // Res_y(p(y), x - y^n)
  BivarPoly a(p.coeffs().size());
  for (size_t k = 0; k < p.coeffs().size(); ++k) a[k] = IntPoly::constant(p.coeff(static_cast<long>(k)));
  BivarPoly b(n + 1);
  b[0] = IntPoly::x();
  b[n] = IntPoly::constant(-1);
  return resultant_y(a, b).primitive_part();
}

IntPoly compose_scale(const IntPoly& p, const Rat& c) {
  if (c == 0) throw PreconditionError("compose_scale by zero");
  const Int u = c.get_num(), v = c.get_den();
  long d = p.degree();
  std::vector<Int> out(static_cast<size_t>(d + 1));
  // roots c*alpha: coefficient i becomes a_i * u^{d-i} * v^i
  Int upow = 1;
  std::vector<Int> upows(static_cast<size_t>(d + 1));
  for (long i = 0; i <= d; ++i) {
    upows[static_cast<size_t>(i)] = upow;
    upow *= u;
  }
  Int vpow = 1;
  for (long i = 0; i <= d; ++i) {
    out[static_cast<size_t>(i)] = p.coeff(i) * upows[static_cast<size_t>(d - i)] * vpow;
    vpow *= v;
  }
  return IntPoly(std::move(out)).primitive_part();
}

IntPoly compose_product(const IntPoly& p, const IntPoly& q) {
  // Res_y(p(y), y^m q(x/y)): coefficient of y^{m-j} is q_j x^j
  long m = q.degree();
  if (p.degree() < 1 || m < 0) throw PreconditionError("compose_product: bad inputs");
  BivarPoly a(p.coeffs().size());
  for (size_t k = 0; k < p.coeffs().size(); ++k) a[k] = IntPoly::constant(p.coeff(static_cast<long>(k)));
  BivarPoly b(static_cast<size_t>(m + 1));
  for (long j = 0; j <= m; ++j) {
    b[static_cast<size_t>(m - j)] = IntPoly::constant(q.coeff(j)).shift_up(j);
  }
  return resultant_y(a, b).primitive_part();
}

IntPoly compose_sum(const IntPoly& p, const IntPoly& q) {
  // Res_y(p(y), q(x - y))
  if (p.degree() < 1 || q.degree() < 0) throw PreconditionError("compose_sum: bad inputs");
  BivarPoly a(p.coeffs().size());
  for (size_t k = 0; k < p.coeffs().size(); ++k) a[k] = IntPoly::constant(p.coeff(static_cast<long>(k)));
  // q(x - y) = sum_j q_j (x - y)^j ; expand with binomials
  long m = q.degree();
  BivarPoly b(static_cast<size_t>(m + 1));
  for (auto& e : b) e = IntPoly();
  // (x - y)^j = sum_k C(j,k) x^{j-k} (-y)^k
  std::vector<std::vector<Int>> binom(static_cast<size_t>(m + 1));
  for (long j = 0; j <= m; ++j) {
    binom[static_cast<size_t>(j)].resize(static_cast<size_t>(j + 1));
    for (long k = 0; k <= j; ++k) {
      Int c;
      mpz_bin_uiui(c.get_mpz_t(), static_cast<unsigned long>(j), static_cast<unsigned long>(k));
      binom[static_cast<size_t>(j)][static_cast<size_t>(k)] = c;
    }
  }
  for (long j = 0; j <= m; ++j) {
    const Int& qj = q.coeff(j);
    if (qj == 0) continue;
    for (long k = 0; k <= j; ++k) {
      Int coef = qj * binom[static_cast<size_t>(j)][static_cast<size_t>(k)];
      if (k & 1) coef = -coef;
      // contributes coef * x^{j-k} to the y^k slot
      b[static_cast<size_t>(k)] = b[static_cast<size_t>(k)] + IntPoly::constant(coef).shift_up(j - k);
    }
  }
  return resultant_y(a, b).primitive_part();
}

IntPoly compose_inverse(const IntPoly& p) {
  if (p.coeff(0) == 0) throw PreconditionError("compose_inverse of polynomial with root 0");
  return p.reversed().primitive_part();
}

unsigned long euler_phi(unsigned long m) {
  unsigned long result = m;
  unsigned long n = m;
  for (unsigned long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

IntPoly cyclotomic(unsigned long m) {
  if (m == 0) throw PreconditionError("cyclotomic(0)");
  static std::mutex mu;
  static std::map<unsigned long, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(m);
    if (it != cache.end()) return it->second;
  }
  // x^m - 1 divided by Phi_d for all proper divisors d of m.
  std::vector<Int> xm(m + 1, Int(0));
  xm[0] = -1;
  xm[m] = 1;
  IntPoly num{std::move(xm)};
  for (unsigned long d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    IntPoly phi_d = cyclotomic(d);
    auto q = div_exact(num, phi_d);
    if (!q) throw Error("internal: cyclotomic division failed");
    num = *q;
  }
  std::lock_guard<std::mutex> lk(mu);
  cache.emplace(m, num);
  return num;
}

}  // namespace exact
}  // namespace dl
