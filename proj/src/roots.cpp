// SPDX-License-Identifier: Apache-2.0
#include "diophlab/roots.hpp"

#include <algorithm>
#include <numeric>

namespace dl {
namespace roots {

using exact::IntPoly;
using interval::ComplexBall;
using interval::Mpfr;
using interval::RealBall;

namespace {

// Plain (non-interval) complex arithmetic on mpfr midpoints, used only to
// drive the Aberth iteration; all rigor comes from the a posteriori
// certification below.
struct MC {
  Mpfr re, im;
  explicit MC(mpfr_prec_t p) : re(p), im(p) {}
};

void mc_sub(MC& d, const MC& a, const MC& b) {
  mpfr_sub(d.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_sub(d.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void mc_add(MC& d, const MC& a, const MC& b) {
  mpfr_add(d.re.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(d.im.get(), a.im.get(), b.im.get(), MPFR_RNDN);
}

void mc_mul(MC& d, const MC& a, const MC& b, Mpfr& t1, Mpfr& t2) {
  // d may not alias a or b
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(d.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_add(d.im.get(), t1.get(), t2.get(), MPFR_RNDN);
}

void mc_div(MC& d, const MC& a, const MC& b, Mpfr& t1, Mpfr& t2, Mpfr& t3) {
  // d may not alias a or b
  mpfr_mul(t1.get(), b.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), b.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(t3.get(), t1.get(), t2.get(), MPFR_RNDN);  // |b|^2
  mpfr_mul(t1.get(), a.re.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.im.get(), b.im.get(), MPFR_RNDN);
  mpfr_add(d.re.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(d.re.get(), d.re.get(), t3.get(), MPFR_RNDN);
  mpfr_mul(t1.get(), a.im.get(), b.re.get(), MPFR_RNDN);
  mpfr_mul(t2.get(), a.re.get(), b.im.get(), MPFR_RNDN);
  mpfr_sub(d.im.get(), t1.get(), t2.get(), MPFR_RNDN);
  mpfr_div(d.im.get(), d.im.get(), t3.get(), MPFR_RNDN);
}

bool mc_is_zero(const MC& a) { return mpfr_zero_p(a.re.get()) && mpfr_zero_p(a.im.get()); }

// Horner evaluation of p and p' at z (midpoint arithmetic).
void eval_p_dp(const IntPoly& p, const MC& z, MC& pv, MC& dv, mpfr_prec_t prec) {
  Mpfr t1(prec), t2(prec);
  MC tmp(prec);
  mpfr_set_zero(pv.re.get(), 1);
  mpfr_set_zero(pv.im.get(), 1);
  mpfr_set_zero(dv.re.get(), 1);
  mpfr_set_zero(dv.im.get(), 1);
  for (long i = p.degree(); i >= 0; --i) {
    // dv = dv*z + pv
    mc_mul(tmp, dv, z, t1, t2);
    mc_add(dv, tmp, pv);
    // pv = pv*z + c_i
    mc_mul(tmp, pv, z, t1, t2);
    mpfr_add_z(pv.re.get(), tmp.re.get(), p.coeff(i).get_mpz_t(), MPFR_RNDN);
    mpfr_set(pv.im.get(), tmp.im.get(), MPFR_RNDN);
  }
}

// Cauchy root bound: 1 + max |c_i| / |c_d|.
double root_bound(const IntPoly& p) {
  Mpfr t(64), lc(64), best(64);
  mpfr_set_z(lc.get(), p.leading().get_mpz_t(), MPFR_RNDN);
  mpfr_abs(lc.get(), lc.get(), MPFR_RNDU);
  mpfr_set_zero(best.get(), 1);
  for (long i = 0; i < p.degree(); ++i) {
    mpfr_set_z(t.get(), p.coeff(i).get_mpz_t(), MPFR_RNDN);
    mpfr_abs(t.get(), t.get(), MPFR_RNDU);
    mpfr_max(best.get(), best.get(), t.get(), MPFR_RNDU);
  }
  mpfr_div(best.get(), best.get(), lc.get(), MPFR_RNDU);
  return 1.0 + mpfr_get_d(best.get(), MPFR_RNDU);
}

struct CertifiedDisk {
  Rat cre, cim;  // exact dyadic center
  Rat radius;    // rigorous upper bound
};

// Weierstrass-style a posteriori bounds: with w_i = p(z_i)/(lc prod_{j!=i}
// (z_i - z_j)), every root lies in the union of disks D(z_i, d*|w_i|), and a
// connected component formed by k disks contains exactly k roots.
bool certify(const IntPoly& p, const std::vector<MC>& z, long prec, std::vector<CertifiedDisk>& out) {
  const long d = p.degree();
  out.assign(static_cast<size_t>(d), CertifiedDisk{});
  for (long i = 0; i < d; ++i) {
    ComplexBall zi(RealBall::from_mpfr_exact(z[static_cast<size_t>(i)].re.get(), prec),
                   RealBall::from_mpfr_exact(z[static_cast<size_t>(i)].im.get(), prec));
    ComplexBall num = interval::eval_poly(p, zi);
    ComplexBall den = ComplexBall::from_real(RealBall::from_int(p.leading(), prec));
    for (long j = 0; j < d; ++j) {
      if (j == i) continue;
      ComplexBall zj(RealBall::from_mpfr_exact(z[static_cast<size_t>(j)].re.get(), prec),
                     RealBall::from_mpfr_exact(z[static_cast<size_t>(j)].im.get(), prec));
      den = den * (zi - zj);
    }
    Rat den_low = den.abs().lower();
    if (den_low <= 0) return false;
    Rat num_up = num.abs().upper();
    CertifiedDisk& cd = out[static_cast<size_t>(i)];
    cd.cre = zi.re().mid_rat();
    cd.cim = zi.im().mid_rat();
    cd.radius = Rat(d) * num_up / den_low;
  }
  // pairwise disjoint as rectangles (conservative: implies disk disjointness)
  for (long i = 0; i < d; ++i)
    for (long j = i + 1; j < d; ++j) {
      const auto& a = out[static_cast<size_t>(i)];
      const auto& b = out[static_cast<size_t>(j)];
      bool re_sep = (a.cre + a.radius < b.cre - b.radius) || (b.cre + b.radius < a.cre - a.radius);
      bool im_sep = (a.cim + a.radius < b.cim - b.radius) || (b.cim + b.radius < a.cim - a.radius);
      if (!re_sep && !im_sep) return false;
    }
  return true;
}

RealBall rat_ball(const Rat& lo, const Rat& hi, long prec) {
  Mpfr lo_f(prec), hi_f(prec);
  mpfr_set_q(lo_f.get(), lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi_f.get(), hi.get_mpq_t(), MPFR_RNDU);
  return RealBall::from_endpoints(lo_f.get(), hi_f.get(), prec);
}

ComplexBall disk_to_ball(const CertifiedDisk& cd, long prec) {
  return ComplexBall(rat_ball(cd.cre - cd.radius, cd.cre + cd.radius, prec),
                     rat_ball(cd.cim - cd.radius, cd.cim + cd.radius, prec));
}

struct RawIsolation {
  std::vector<ComplexBall> disks;  // unsorted
  std::vector<int> conj;
  long bits;
};

// Run Aberth at escalating precision from optional warm-start midpoints,
// certify, and resolve conjugate pairing. Returns disks in iteration order.
RawIsolation isolate_raw(const IntPoly& p, long bits, long ceiling,
                         const std::vector<ComplexBall>* warm) {
  const long d = p.degree();
  RawIsolation out;
  if (d <= 0) {
    out.bits = bits;
    return out;
  }
  if (d == 1) {
    Rat root = make_rat(-p.coeff(0), p.coeff(1));
    long prec = std::max(bits + 32, 64L);
    out.disks.push_back(ComplexBall(RealBall::from_rat(root, prec), RealBall::zero(prec)));
    out.conj.push_back(0);
    out.bits = prec;
    return out;
  }

  double r0 = root_bound(p);
  for (long prec = std::max(bits, 64L); prec <= ceiling; prec *= 2) {
    std::vector<MC> z;
    z.reserve(static_cast<size_t>(d));
    if (warm && static_cast<long>(warm->size()) == d) {
      for (long i = 0; i < d; ++i) {
        MC c(prec);
        mpfr_set((c.re.get()), (*warm)[static_cast<size_t>(i)].re().mid(), MPFR_RNDN);
        mpfr_set((c.im.get()), (*warm)[static_cast<size_t>(i)].im().mid(), MPFR_RNDN);
        z.push_back(std::move(c));
      }
    } else {
      // Bini-style starting points on a circle, with an angular offset that
      // keeps them off the real axis and off symmetric configurations.
      for (long i = 0; i < d; ++i) {
        MC c(prec);
        Mpfr theta(prec);
        mpfr_const_pi(theta.get(), MPFR_RNDN);
        mpfr_mul_si(theta.get(), theta.get(), 2 * i + 1, MPFR_RNDN);
        mpfr_div_si(theta.get(), theta.get(), d, MPFR_RNDN);
        mpfr_add_d(theta.get(), theta.get(), 0.7, MPFR_RNDN);
        Mpfr s(prec), co(prec);
        mpfr_sin_cos(s.get(), co.get(), theta.get(), MPFR_RNDN);
        mpfr_mul_d(c.re.get(), co.get(), r0, MPFR_RNDN);
        mpfr_mul_d(c.im.get(), s.get(), r0, MPFR_RNDN);
        z.push_back(std::move(c));
      }
    }

    // Aberth-Ehrlich sweeps.
    const int max_sweeps = 60 + 4 * static_cast<int>(d);
    Mpfr t1(prec), t2(prec), t3(prec);
    MC pv(prec), dv(prec), nw(prec), sum(prec), diff(prec), inv(prec), one(prec), q(prec), corr(prec);
    mpfr_set_ui(one.re.get(), 1, MPFR_RNDN);
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
      bool all_small = true;
      for (long i = 0; i < d; ++i) {
        MC& zi = z[static_cast<size_t>(i)];
        eval_p_dp(p, zi, pv, dv, prec);
        if (mc_is_zero(pv)) continue;  // exactly on a root at this precision
        if (mc_is_zero(dv)) {
          // nudge off a critical point
          mpfr_add_d(zi.re.get(), zi.re.get(), 1e-3, MPFR_RNDN);
          all_small = false;
          continue;
        }
        mc_div(nw, pv, dv, t1, t2, t3);  // Newton correction
        mpfr_set_zero(sum.re.get(), 1);
        mpfr_set_zero(sum.im.get(), 1);
        bool collision = false;
        for (long j = 0; j < d; ++j) {
          if (j == i) continue;
          mc_sub(diff, zi, z[static_cast<size_t>(j)]);
          if (mc_is_zero(diff)) {
            collision = true;
            break;
          }
          mc_div(inv, one, diff, t1, t2, t3);
          mc_add(sum, sum, inv);
        }
        if (collision) {
          mpfr_add_d(zi.im.get(), zi.im.get(), 1e-3 * (i + 1), MPFR_RNDN);
          all_small = false;
          continue;
        }
        // corr = nw / (1 - nw*sum)
        mc_mul(q, nw, sum, t1, t2);
        mpfr_ui_sub(q.re.get(), 1, q.re.get(), MPFR_RNDN);
        mpfr_neg(q.im.get(), q.im.get(), MPFR_RNDN);
        if (mc_is_zero(q)) {
          mpfr_add_d(zi.re.get(), zi.re.get(), 1e-3, MPFR_RNDN);
          all_small = false;
          continue;
        }
        mc_div(corr, nw, q, t1, t2, t3);
        mpfr_sub(zi.re.get(), zi.re.get(), corr.re.get(), MPFR_RNDN);
        mpfr_sub(zi.im.get(), zi.im.get(), corr.im.get(), MPFR_RNDN);
        // relative smallness: |corr| > 2^-(prec-8) * (1 + |z_i|) keeps going
        mpfr_hypot(t1.get(), corr.re.get(), corr.im.get(), MPFR_RNDU);
        mpfr_hypot(t2.get(), zi.re.get(), zi.im.get(), MPFR_RNDU);
        mpfr_add_ui(t2.get(), t2.get(), 1, MPFR_RNDU);
        mpfr_mul_2si(t2.get(), t2.get(), -(prec - 8), MPFR_RNDU);
        if (mpfr_cmp(t1.get(), t2.get()) > 0) all_small = false;
      }
      if (all_small && sweep >= 1) break;
    }

    std::vector<CertifiedDisk> disks;
    if (!certify(p, z, prec, disks)) continue;

    // Conjugate pairing: mirror each disk and find the unique disk meeting it.
    std::vector<int> conj(static_cast<size_t>(d), -1);
    bool pairing_ok = true;
    for (long i = 0; i < d && pairing_ok; ++i) {
      const auto& a = disks[static_cast<size_t>(i)];
      int hit = -1, nhits = 0;
      for (long j = 0; j < d; ++j) {
        const auto& b = disks[static_cast<size_t>(j)];
        bool re_sep = (a.cre + a.radius < b.cre - b.radius) || (b.cre + b.radius < a.cre - a.radius);
        bool im_sep = (-a.cim + a.radius < b.cim - b.radius) || (b.cim + b.radius < -a.cim - a.radius);
        if (!re_sep && !im_sep) {
          hit = static_cast<int>(j);
          ++nhits;
        }
      }
      if (nhits != 1) {
        pairing_ok = false;
        break;
      }
      conj[static_cast<size_t>(i)] = hit;
    }
    if (!pairing_ok) continue;
    // involution sanity
    for (long i = 0; i < d; ++i)
      if (conj[static_cast<size_t>(conj[static_cast<size_t>(i)])] != static_cast<int>(i))
        pairing_ok = false;
    if (!pairing_ok) continue;

    out.disks.clear();
    out.conj = conj;
    for (long i = 0; i < d; ++i) {
      const auto& cd = disks[static_cast<size_t>(i)];
      if (conj[static_cast<size_t>(i)] == static_cast<int>(i)) {
        // real root: pin the imaginary part to exactly zero
        out.disks.push_back(ComplexBall(rat_ball(cd.cre - cd.radius, cd.cre + cd.radius, prec),
                                        RealBall::zero(prec)));
      } else {
        out.disks.push_back(disk_to_ball(cd, prec));
      }
    }
    // mirror conjugate pairs exactly: for i < conj[i], set disk[conj[i]] to
    // the conjugate of disk[i] intersected with its own disk
    for (long i = 0; i < d; ++i) {
      int j = out.conj[static_cast<size_t>(i)];
      if (j > static_cast<int>(i)) {
        ComplexBall mirror = out.disks[static_cast<size_t>(i)].conj();
        auto re_i = RealBall::intersect(mirror.re(), out.disks[static_cast<size_t>(j)].re());
        auto im_i = RealBall::intersect(mirror.im(), out.disks[static_cast<size_t>(j)].im());
        if (re_i && im_i) out.disks[static_cast<size_t>(j)] = ComplexBall(*re_i, *im_i);
        else out.disks[static_cast<size_t>(j)] = mirror;
      }
    }
    out.bits = prec;
    return out;
  }
  throw PrecisionExhausted("root isolation: could not certify disjoint disks below precision ceiling");
}

Rat max_radius(const std::vector<ComplexBall>& disks) {
  Rat m(0);
  for (const auto& b : disks) {
    m = std::max(m, b.re().rad_upper());
    m = std::max(m, b.im().rad_upper());
  }
  return m;
}

Rat pow2(long e) {
  Rat r(1);
  if (e >= 0) {
    Int n(1);
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(e));
    r = Rat(n);
  } else {
    Int n(1);
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(-e));
    r = make_rat(1, n);
  }
  return r;
}

// Refine with index stability: re-isolate at higher precision, then match
// each new disk to the unique old disk it lies in (the old disks are
// pairwise disjoint, so the containing disk identifies the root), and
// intersect so enclosures shrink monotonically.
RawIsolation refine_matched(const IntPoly& p, const RawIsolation& cur, long next_bits, long ceiling) {
  long next = std::max(cur.bits * 2, next_bits);
  while (true) {
    if (next > ceiling) throw PrecisionExhausted("root refinement exhausted precision ceiling");
    RawIsolation finer = isolate_raw(p, next, ceiling, &cur.disks);
    std::vector<int> map_new_to_old(finer.disks.size(), -1);
    bool ok = true;
    for (size_t k = 0; k < finer.disks.size() && ok; ++k) {
      int hit = -1, nhits = 0;
      for (size_t i = 0; i < cur.disks.size(); ++i) {
        if (finer.disks[k].overlaps(cur.disks[i])) {
          hit = static_cast<int>(i);
          ++nhits;
        }
      }
      if (nhits != 1) ok = false;
      map_new_to_old[k] = hit;
    }
    if (ok) {
      std::vector<bool> used(cur.disks.size(), false);
      for (int m : map_new_to_old) {
        if (m < 0 || used[static_cast<size_t>(m)]) {
          ok = false;
          break;
        }
        used[static_cast<size_t>(m)] = true;
      }
    }
    if (!ok) {
      next *= 2;
      continue;
    }
    RawIsolation out;
    out.bits = finer.bits;
    out.disks.assign(cur.disks.size(), ComplexBall(finer.bits));
    out.conj.assign(cur.conj.size(), -1);
    for (size_t k = 0; k < finer.disks.size(); ++k) {
      size_t i = static_cast<size_t>(map_new_to_old[k]);
      auto re_i = RealBall::intersect(finer.disks[k].re(), cur.disks[i].re());
      auto im_i = RealBall::intersect(finer.disks[k].im(), cur.disks[i].im());
      out.disks[i] = (re_i && im_i) ? ComplexBall(*re_i, *im_i) : finer.disks[k];
      out.conj[i] = map_new_to_old[static_cast<size_t>(finer.conj[k])];
    }
    return out;
  }
}

}  // namespace

Rat separation_lower_bound(const exact::IntPoly& p) {
  const long d = p.degree();
  if (d < 2) throw PreconditionError("separation bound needs degree >= 2");
  Rat disc = exact::discriminant(p);
  if (disc == 0) throw PreconditionError("separation bound needs squarefree input");
  // sep(p) > sqrt(3 |disc|) / ( d^{(d+2)/2} * M(p)^{d-1} ), with
  // M(p) <= ||p||_2 (Landau).
  const long prec = 128;
  Mpfr num(prec), den(prec), t(prec);
  Int disc_num = abs(disc.get_num());  // |disc| >= |disc_num|/|den|, den = 1 here
  mpfr_set_z(num.get(), disc_num.get_mpz_t(), MPFR_RNDD);
  mpfr_mul_ui(num.get(), num.get(), 3, MPFR_RNDD);
  mpfr_sqrt(num.get(), num.get(), MPFR_RNDD);
  // d^{(d+2)/2} = sqrt(d^(d+2))
  mpfr_set_ui(t.get(), static_cast<unsigned long>(d), MPFR_RNDU);
  mpfr_pow_ui(t.get(), t.get(), static_cast<unsigned long>(d + 2), MPFR_RNDU);
  mpfr_sqrt(den.get(), t.get(), MPFR_RNDU);
  // ||p||_2^{d-1} = (l2sq)^{(d-1)/2}
  Int l2 = p.l2_norm_squared();
  mpfr_set_z(t.get(), l2.get_mpz_t(), MPFR_RNDU);
  mpfr_pow_ui(t.get(), t.get(), static_cast<unsigned long>(d - 1), MPFR_RNDU);
  mpfr_sqrt(t.get(), t.get(), MPFR_RNDU);
  mpfr_mul(den.get(), den.get(), t.get(), MPFR_RNDU);
  mpfr_div(num.get(), num.get(), den.get(), MPFR_RNDD);
  if (mpfr_sgn(num.get()) <= 0) throw Error("internal: separation bound underflow");
  Rat q;
  mpfr_get_q(q.get_mpq_t(), num.get());
  return q;
}

namespace {

// Exact equality test for the real parts of two roots via the pairwise-sum
// polynomial: Re(a)=Re(b) iff a+conj(a) = b+conj(b), and both sums are roots
// of Res_y(p(y), p(x-y)).
bool real_parts_equal_exact(const IntPoly& p, const RawIsolation& iso, int i, int j, long ceiling) {
  IntPoly sums = exact::squarefree_part(exact::compose_sum(p, p));
  Rat sep = separation_lower_bound(sums);
  RawIsolation cur = iso;
  while (true) {
    // s = 2*Re(root) = root + conj(root); both sums are roots of `sums`,
    // so enclosures narrower than the separation bound decide equality.
    RealBall si = cur.disks[static_cast<size_t>(i)].re() +
                  cur.disks[static_cast<size_t>(cur.conj[static_cast<size_t>(i)])].re();
    RealBall sj = cur.disks[static_cast<size_t>(j)].re() +
                  cur.disks[static_cast<size_t>(cur.conj[static_cast<size_t>(j)])].re();
    if (si.rad_upper() * 4 < sep && sj.rad_upper() * 4 < sep) {
      return si.overlaps(sj);
    }
    cur = refine_matched(p, cur, cur.bits * 2, ceiling);
  }
}

}  // namespace

Isolation isolate(const exact::IntPoly& p_in, long bits, long ceiling) {
  IntPoly p = p_in.primitive_part();
  if (p.degree() < 1) throw PreconditionError("isolate: degree must be >= 1");
  if (p.degree() >= 2 && exact::gcd(p, p.derivative()).degree() != 0)
    throw PreconditionError("isolate: polynomial must be squarefree");
  RawIsolation raw = isolate_raw(p, bits, ceiling, nullptr);
  // radius target 2^-bits
  if (max_radius(raw.disks) > pow2(-bits)) raw = refine_matched(p, raw, bits, ceiling);
  while (max_radius(raw.disks) > pow2(-bits)) raw = refine_matched(p, raw, raw.bits * 2, ceiling);

  const long d = p.degree();
  // Canonical order: real part descending, then imaginary part descending.
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  auto less_canonical = [&](int a, int b) -> bool {
    if (a == b) return false;
    while (true) {
      const auto& da = raw.disks[static_cast<size_t>(a)];
      const auto& db = raw.disks[static_cast<size_t>(b)];
      if (raw.conj[static_cast<size_t>(a)] == b) {
        // conjugate pair: equal real parts by construction; decide by Im
        auto c = interval::compare(da.im(), db.im());
        if (c == interval::Cmp::less) return false;
        if (c == interval::Cmp::greater) return true;  // descending Im
      } else {
        auto cre = interval::compare(da.re(), db.re());
        if (cre == interval::Cmp::less) return false;  // descending Re
        if (cre == interval::Cmp::greater) return true;
        auto cim = interval::compare(da.im(), db.im());
        if (cim != interval::Cmp::indeterminate &&
            real_parts_equal_exact(p, raw, a, b, ceiling)) {
          return cim == interval::Cmp::greater;
        }
        // real parts genuinely differ (or nothing separated yet): refine
      }
      raw = refine_matched(p, raw, raw.bits * 2, ceiling);
    }
  };
  std::sort(order.begin(), order.end(), less_canonical);

  Isolation iso;
  iso.poly = p;
  iso.bits = raw.bits;
  iso.disks.reserve(static_cast<size_t>(d));
  std::vector<int> inv(static_cast<size_t>(d));
  for (long k = 0; k < d; ++k) inv[static_cast<size_t>(order[static_cast<size_t>(k)])] = static_cast<int>(k);
  for (long k = 0; k < d; ++k) {
    int src = order[static_cast<size_t>(k)];
    iso.disks.push_back(raw.disks[static_cast<size_t>(src)]);
    iso.conj.push_back(inv[static_cast<size_t>(raw.conj[static_cast<size_t>(src)])]);
  }
  return iso;
}

Isolation refine(const Isolation& iso, long bits, long ceiling) {
  if (iso.poly.degree() < 1) return iso;
  Rat target = pow2(-bits);
  if (max_radius(iso.disks) <= target && iso.bits >= bits) return iso;
  RawIsolation raw;
  raw.disks = iso.disks;
  raw.conj = iso.conj;
  raw.bits = iso.bits;
  raw = refine_matched(iso.poly, raw, bits, ceiling);
  while (max_radius(raw.disks) > target)
    raw = refine_matched(iso.poly, raw, raw.bits * 2, ceiling);
  Isolation out;
  out.poly = iso.poly;
  out.disks = std::move(raw.disks);
  out.conj = std::move(raw.conj);
  out.bits = raw.bits;
  return out;
}

}  // namespace roots
}  // namespace dl
