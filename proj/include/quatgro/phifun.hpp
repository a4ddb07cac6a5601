#pragma once

#include "quatgro/ratfun.hpp"

namespace quatgro {

// Truncations and one-sided envelopes of the two auxiliary functions whose
// quotient drives the oscillation analysis.  The *_trunc kinds drop the
// series tail; the *_upper / *_lower kinds replace the dropped tail with a
// geometric majorant so the result brackets the true function from the
// stated side (on x > 1, and for ddphi2_trunc from below on [1, 5] once
// m >= 35).
enum class PhiKind {
    phi1_trunc,    // below phi1
    phi1_upper,    // above phi1
    dphi1_trunc,   // above phi1'
    dphi1_lower,   // below phi1'
    ddphi1_trunc,  // below phi1''
    ddphi1_upper,  // above phi1''
    phi2_trunc,    // below phi2
    phi2_upper,    // above phi2
    dphi2_trunc,   // below phi2'
    dphi2_upper,   // above phi2'
    ddphi2_trunc,  // below phi2'' on [1, 5] for m >= 35
};

// Exact series coefficients of the two expansions; phi_c/phi_d/phi_e need
// k >= 2 and phi_a/phi_b need k >= 0.
BigRational phi_c(long k);
BigRational phi_d(long k);
BigRational phi_e(long k);
BigRational phi_a(long k);
BigRational phi_b(long k);

// Builds the order-m truncation of the requested kind as an exact rational
// function.  Requires m >= 2.
RationalFunction build_phi(int m, PhiKind kind);

}  // namespace quatgro
