// Closed-form sharp constants: the Babenko-Beckner constant A_p, the Gabor
// bound H(p,q), the Wigner bound C(p,q) = 2^{(p-2)d/p} H(p,q), the
// localization operator-norm factor and the Cohen operator-norm factor, plus
// the boundedness-region predicate for the Wigner transform on L^r x L^s.
#pragma once

#include "tfq/core.hpp"

namespace tfq {

// A_p = (p^{1/p} / p'^{1/p'})^{1/2}, with A_1 = A_inf = 1.
double babenko(const Exponent& p);

// H(p,q) for 2 <= p <= inf, p' <= q <= p; H(inf, q) = 1. 0^0 = 1 throughout.
double h_const(const Exponent& p, const Exponent& q, int d);

// C(p,q) = 2^{(p-2)d/p} H(p,q); 2^d at p = inf.
double c_const(const Exponent& p, const Exponent& q, int d);

// True iff Wig: L^r x L^s -> L^p is bounded: s = r', p >= 2, p' <= r <= p.
bool wigner_bounded(const Exponent& r, const Exponent& s, const Exponent& p);

// (1/q')^{d/q'} nphi npsi na, the Lemma bound for ||L^a_{phi,psi}||_{B(L^2)}.
double loc_norm_bound(const Exponent& q, int d, double nphi, double npsi, double na);

// (A_r A_s A_{q'})^d C(q', p): the operator-norm constant per unit
// ||a||_r ||sigma||_s. Requires q in [1,2], 1/r + 1/s = 1 + 1/q, p in [q, q'].
double cohen_norm_bound(const Exponent& r, const Exponent& s, const Exponent& q, const Exponent& p, int d);

}  // namespace tfq
