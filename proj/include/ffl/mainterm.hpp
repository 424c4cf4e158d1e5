#pragma once

#include <cstdint>

#include "ffl/value.hpp"

namespace ffl {
namespace mainterm {

// Closed-form main-term evaluators for the moment theorems.  Everything is
// exact in Q(q^{-1/2}); s must be a half-integer rational (the theorems are
// only ever compared at s in {1/2, 1, 2}).  The single letters follow the
// usual naming for these constants; comments state the family each drives.

/// zeta function of the polynomial ring: 1/(1 - q^{1-s}).  Pole at s = 1.
HalfValue zetaA(uint32_t q, const Rat& s);
/// eta(s) = zetaA(2-s)/zetaA(1+s).
HalfValue eta(uint32_t q, const Rat& s);
/// nu(s) = (1+q^{-s})/(1+q^{s-1}).
HalfValue nu(uint32_t q, const Rat& s);
/// q^e for a half-integer rational exponent.
HalfValue qpow(uint32_t q, const Rat& e);

// Square-contribution constants (odd characteristic; the tilde variants
// below are their even-characteristic truncations).
HalfValue Ag(uint32_t q, int g, const SPoint& s);
HalfValue Bg(uint32_t q, int g, const SPoint& s);
HalfValue Ch(uint32_t q, int h, const SPoint& s);
HalfValue Bconst(uint32_t q, int g);  // B(g)

// Exact finite-sum forms the proofs collapse; each equals its closed form
// above with zero tolerance.  These are the oracle side.
HalfValue Ag_sum(uint32_t q, int g, const SPoint& s);       // sum_{l<=g/2} q^{(1-2s)l}
HalfValue Bg_sum(uint32_t q, int g, const SPoint& s);       // q^{(1-2s)g} sum q^{(2s-1)l}
HalfValue Ch_sum(uint32_t q, int h, const SPoint& s);       // q^{-(h+1)s} sum_{l<=h/2} q^l
HalfValue Bconst_sum(uint32_t q, int g);                    // zetaA(2)^{-1} q sum (g-2l) q^l

/// First-moment collapse A_g + B_g: (g+1) at s = 1/2, else
/// zetaA(2s)(1 - q^{(1+g)(1-2s)}).
HalfValue first_moment_collapse(uint32_t q, int g, const SPoint& s);

// Even-characteristic square-contribution constants.
HalfValue Atilde(uint32_t q, int g, const SPoint& s);
HalfValue Btilde(uint32_t q, int g, const SPoint& s);
HalfValue Btilde_const(uint32_t q, int g);

// First-moment main-term factors per family.
HalfValue I(uint32_t q, int g, const SPoint& s);       // primes of degree 2g+1
HalfValue J(uint32_t q, int g, const SPoint& s);       // primes of degree 2g+2
HalfValue K(uint32_t q, int g, const SPoint& s);       // gamma * (degree 2g+2 primes)
HalfValue Itilde(uint32_t q, int g, const SPoint& s);  // even q, family H
HalfValue Jtilde(uint32_t q, int g, const SPoint& s);  // even q, family F
HalfValue Ktilde(uint32_t q, int g, const SPoint& s);  // even q, family F'

// Pieces of J and K, exposed for the consistency tests.
HalfValue Jp(uint32_t q, int g, const Rat& s);
HalfValue Jpp(uint32_t q, int g, const Rat& s);
HalfValue Jstar(uint32_t q, int g, const Rat& s);
HalfValue Kp(uint32_t q, int g, const Rat& s);
HalfValue Kpp(uint32_t q, int g, const Rat& s);
HalfValue Kstar(uint32_t q, int g, const Rat& s);

// Report-only floating approximations for s off the exact grid.
double I_approx(uint32_t q, int g, double s);
double J_approx(uint32_t q, int g, double s);
double K_approx(uint32_t q, int g, double s);
double Itilde_approx(uint32_t q, int g, double s);
double Jtilde_approx(uint32_t q, int g, double s);
double Ktilde_approx(uint32_t q, int g, double s);

}  // namespace mainterm
}  // namespace ffl
