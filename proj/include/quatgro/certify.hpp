#pragma once

#include "quatgro/phifun.hpp"

#include <string>
#include <utility>
#include <vector>

namespace quatgro {

// One certified strict-sign fact, or an exact arithmetic side condition.
struct CertificateCheck {
    std::string label;
    BigRational lo = 0;
    BigRational hi = 0;
    long root_count = -1;  // distinct numerator roots found in (lo, hi]
    int sample_sign = 0;   // exact sign at the interval midpoint
    int required_sign = 0;
    bool informational = false;  // reported but excluded from the verdict
    bool passed = false;
};

struct Certificate {
    std::string proposition;
    BigRational lo = 0;
    BigRational hi = 0;
    int m = 0;
    std::vector<CertificateCheck> checks;
    std::vector<std::string> notes;
    bool verdict = false;
    double wall_seconds = 0.0;
};

// Certifies that f has the required strict sign everywhere on (lo, hi]:
// the numerator must have no roots there (exact Sturm count after clearing
// endpoint roots, with an even/odd degree reduction when available), the
// denominator must not vanish inside, and the exact midpoint sign must
// match.  required_sign is +1 or -1.
CertificateCheck certify_sign(const std::string& label,
                              const RationalFunction& f,
                              const BigRational& lo, const BigRational& hi,
                              int required_sign, bool informational = false);

// The quotient's numerator keeps increasing past 1.732, so the maximizer of
// the oscillation weight sits to the right of that point.
Certificate certify_omega_tau(int m = 50);

// The weight decays no faster than x^-7 from 1.732 out to 5; the matching
// power-1 variant is reported for comparison but not asserted.
Certificate certify_omega_p7(int m = 50);

// The phase-velocity ratio is strictly decreasing on (1, 1.732].
Certificate certify_mu(int m = 40);

// Encloses a*b for a in [a_lo, a_hi] with 0 <= a_lo and b in [b_lo, b_hi];
// the bound tightens when b is known nonnegative.
std::pair<BigRational, BigRational> product_bound(const BigRational& a_lo,
                                                  const BigRational& a_hi,
                                                  const BigRational& b_lo,
                                                  const BigRational& b_hi,
                                                  bool assume_b_nonneg = false);

std::string render_proof_log(const Certificate& cert);

}  // namespace quatgro
