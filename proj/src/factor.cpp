// SPDX-License-Identifier: Apache-2.0
//
// Irreducibility and factorization over Q by certified root clustering:
// candidate factors are reconstructed from conjugate-closed subsets of the
// certified complex roots (round the ball coefficients of
// lc * prod (x - root) to integers, then verify by exact division).
#include <algorithm>

#include "diophlab/exact.hpp"
#include "diophlab/interval.hpp"
#include "diophlab/roots.hpp"

namespace dl {
namespace exact {

using interval::RealBall;

namespace {

struct Unit {
  int index;      // root index (pair: the lower of the two)
  bool is_pair;   // conjugate pair contributes a quadratic
};

// coefficients ascending, real balls
using BallPoly = std::vector<RealBall>;

BallPoly mul_ballpoly(const BallPoly& a, const BallPoly& b, long prec) {
  BallPoly out(a.size() + b.size() - 1, RealBall::zero(prec));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] = out[i + j] + a[i] * b[j];
  return out;
}

enum class SubsetOutcome { confirmed, excluded, ambiguous };

SubsetOutcome try_subset(const IntPoly& w, const roots::Isolation& iso,
                         const std::vector<Unit>& units, unsigned mask, IntPoly& factor_out) {
  long prec = iso.bits;
  BallPoly acc{RealBall::from_long(1, prec)};
  for (size_t u = 0; u < units.size(); ++u) {
    if (!(mask & (1u << u))) continue;
    const auto& z = iso.disks[static_cast<size_t>(units[u].index)];
    if (units[u].is_pair) {
      BallPoly quad{z.abs_squared(), z.re().mul_int(Int(-2)), RealBall::from_long(1, prec)};
      acc = mul_ballpoly(acc, quad, prec);
    } else {
      BallPoly lin{-z.re(), RealBall::from_long(1, prec)};
      acc = mul_ballpoly(acc, lin, prec);
    }
  }
  std::vector<Int> coeffs(acc.size());
  for (size_t i = 0; i < acc.size(); ++i) {
    RealBall scaled = acc[i].mul_int(w.leading());
    Rat lo = scaled.lower(), hi = scaled.upper();
    Int klo, khi;
    mpz_cdiv_q(klo.get_mpz_t(), lo.get_num().get_mpz_t(), lo.get_den().get_mpz_t());
    mpz_fdiv_q(khi.get_mpz_t(), hi.get_num().get_mpz_t(), hi.get_den().get_mpz_t());
    if (klo > khi) return SubsetOutcome::excluded;     // no integer in the ball
    if (klo < khi) return SubsetOutcome::ambiguous;    // more than one candidate
    coeffs[i] = klo;
  }
  IntPoly candidate = IntPoly(std::move(coeffs)).primitive_part();
  if (candidate.degree() < 1) return SubsetOutcome::excluded;
  if (!div_exact(w, candidate)) return SubsetOutcome::excluded;
  factor_out = candidate;
  return SubsetOutcome::confirmed;
}

// Find one irreducible factor of a squarefree primitive w (degree >= 2), or
// conclude w itself is irreducible (returns w).
IntPoly find_factor(const IntPoly& w) {
  const long d = w.degree();
  long ceiling = interval::precision_ceiling_from_env();
  roots::Isolation iso = roots::isolate(w, 64, ceiling);
  while (true) {
    std::vector<Unit> units;
    for (long i = 0; i < d; ++i) {
      int c = iso.conj[static_cast<size_t>(i)];
      if (c == static_cast<int>(i)) units.push_back({static_cast<int>(i), false});
      else if (c > static_cast<int>(i)) units.push_back({static_cast<int>(i), true});
    }
    const size_t nu = units.size();
    std::vector<std::pair<long, unsigned>> masks;  // (degree, mask)
    for (unsigned mask = 1; mask < (1u << nu); ++mask) {
      long deg = 0;
      for (size_t u = 0; u < nu; ++u)
        if (mask & (1u << u)) deg += units[u].is_pair ? 2 : 1;
      if (deg >= 1 && deg <= d / 2) masks.emplace_back(deg, mask);
    }
    std::sort(masks.begin(), masks.end());
    bool ambiguous = false;
    for (const auto& [deg, mask] : masks) {
      IntPoly g;
      switch (try_subset(w, iso, units, mask, g)) {
        case SubsetOutcome::confirmed:
          return g;
        case SubsetOutcome::ambiguous:
          ambiguous = true;
          break;
        case SubsetOutcome::excluded:
          break;
      }
    }
    if (!ambiguous) return w;  // every proper conjugate-closed subset excluded
    iso = roots::refine(iso, iso.bits * 2, ceiling);
  }
}

void factor_squarefree_rec(const IntPoly& w, std::vector<IntPoly>& out) {
  if (w.degree() < 1) return;
  if (w.degree() == 1) {
    out.push_back(w.primitive_part());
    return;
  }
  IntPoly g = find_factor(w);
  if (g == w) {
    out.push_back(w);
    return;
  }
  auto q = div_exact(w, g);
  if (!q) throw Error("internal: confirmed factor fails division");
  factor_squarefree_rec(g, out);
  factor_squarefree_rec(q->primitive_part(), out);
}

}  // namespace

bool is_irreducible(const IntPoly& p_in) {
  IntPoly p = p_in.primitive_part();
  if (p.degree() < 1) throw PreconditionError("is_irreducible needs degree >= 1");
  if (p.degree() > kFactorDegreeCap)
    throw DegreeCapError("degree above factorization cap of " + std::to_string(kFactorDegreeCap));
  if (p.degree() == 1) return true;
  if (gcd(p, p.derivative()).degree() != 0) return false;  // repeated factor
  return find_factor(p) == p;
}

std::vector<IntPoly> factor_distinct_irreducible(const IntPoly& p_in) {
  IntPoly p = p_in.primitive_part();
  if (p.degree() < 1) throw PreconditionError("factor needs degree >= 1");
  if (p.degree() > kFactorDegreeCap)
    throw DegreeCapError("degree above factorization cap of " + std::to_string(kFactorDegreeCap));
  IntPoly w = squarefree_part(p);
  std::vector<IntPoly> out;
  factor_squarefree_rec(w, out);
  std::sort(out.begin(), out.end(), [](const IntPoly& a, const IntPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (long i = a.degree(); i >= 0; --i) {
      int c = cmp(a.coeff(i), b.coeff(i));
      if (c != 0) return c < 0;
    }
    return false;
  });
  return out;
}

}  // namespace exact
}  // namespace dl
