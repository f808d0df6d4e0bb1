// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "diophlab/exact.hpp"
#include "diophlab/interval.hpp"

namespace dl {
namespace roots {

// Certified isolation of all complex roots of a squarefree integer
// polynomial.  disks[] are pairwise-disjoint rectangular enclosures, each
// containing exactly one root, in canonical order (real part descending,
// then imaginary part descending; ties between real parts of non-conjugate
// roots are decided exactly via a sum-polynomial separation bound).
// conj[i] is the index of the complex-conjugate root (i itself for real
// roots); real roots carry an exactly-zero imaginary part.
struct Isolation {
  exact::IntPoly poly;
  std::vector<interval::ComplexBall> disks;
  std::vector<int> conj;
  long bits = 0;
};

// Throws PrecisionExhausted if disjointness cannot be certified below
// `ceiling` working bits; PreconditionError if p is not squarefree.
Isolation isolate(const exact::IntPoly& p, long bits, long ceiling);

// Refine until every disk radius is <= 2^-bits; index correspondence and
// enclosure nesting are preserved.
Isolation refine(const Isolation& iso, long bits, long ceiling);

// Rigorous positive lower bound on the minimal distance between distinct
// roots (Mahler's discriminant bound with Landau's bound on the measure).
// Requires squarefree p of degree >= 2.
Rat separation_lower_bound(const exact::IntPoly& p);

}  // namespace roots
}  // namespace dl
