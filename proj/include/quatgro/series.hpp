#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace quatgro {

using BigRational = mpq_class;

// Odd power series with split coefficients: the coefficient of x^(2k+1) is
// rational[k] * sigma^(scale0 + scale_step*k) where sigma = 32/(9 pi).
// Keeping the transcendental factor symbolic lets every sign decision and
// every series identity run on exact rationals.
struct ExactOddSeries {
    std::vector<BigRational> rational;
    long scale0 = 0;
    long scale_step = 0;

    std::size_t terms() const { return rational.size(); }

    // Exact sign of the coefficient of x^(2k+1); the sigma power is positive.
    int coeff_sign(std::size_t k) const;

    // Floating value of the coefficient of x^(2k+1).
    double coeff(std::size_t k) const;

    // Floating truncated evaluation sum_k coeff(k) x^(2k+1).
    double eval(double x) const;
};

bool operator==(const ExactOddSeries& a, const ExactOddSeries& b);

// x * 2F1(1/2, 1/2; 3; x^2) scaled so the x coefficient is 9 pi / 32.
ExactOddSeries p_coeffs(std::size_t order);

// x * 2F1(1/2, 1/2; 2; x^2) scaled so the x coefficient is pi / 4.
ExactOddSeries h_coeffs(std::size_t order);

// Pure rational series x * 2F1(1/2, 1/2; ell; x^2).
ExactOddSeries p_ell_coeffs(int ell, std::size_t order);

// Compositional inverse with count coefficients, computed by Newton
// iteration on the defining composition over exact rationals.  Requires a
// nonzero leading coefficient and an even scale_step.  The result satisfies
// (s o revert_series(s))(x) = x exactly up to the truncation order; that
// composition identity is re-verified internally before returning.
ExactOddSeries revert_series(const ExactOddSeries& s, std::size_t count);

// Rational part of inverse coefficient k via closed-form extraction
// [s^k] (x/g)^(2k+1) / (2k+1).  Factorial-heavy; used as an independent
// cross-check of revert_series for small k.
BigRational lagrange_inverse_rational(const ExactOddSeries& s, std::size_t k);

struct SignReport {
    int ell = 0;
    std::vector<int> signs;  // exact signs of the inverse coefficients
    bool first_positive_rest_negative = false;
};

// Exact signs of the first count coefficients of the inverse of p_ell.
SignReport coefficient_signs(int ell, std::size_t count);

struct Constants {
    double x0 = 0.0;
    double c0 = 0.0;
    double K_GH_bound = 0.0;
    double K_gamma_bound = 0.0;
    double nesterov = 0.0;
    double alpha_gw = 0.0;
    double dd_constant = 0.0;
};

// All derived numeric constants: x0 by bisection of p(x) = 9 pi (1+x)/64 on
// [0,1] (p evaluated as x times the quadrature integral), c0 and the bound
// 1/c0, the gamma-norm bound 64/(9 pi) - 1, the symmetric PSD bound
// 32/(9 pi), the rounding ratio alpha_gw = inf (1+p(x))/(1+x), and the
// diagonally-dominant constant 1 + (1 - 9 pi/32)/alpha_gw.
Constants solve_constants();

enum class ContinuedWhich { psi1, psi2, theta, abs_p_plus, omega, mu };

// Floating evaluation of the analytic-continuation family on [1, inf):
// psi1/psi2 from their series, theta = arctan(psi2/psi1), the modulus
// sqrt(psi1^2 + psi2^2), omega = psi2' psi1 - psi1' psi2, and
// mu = (psi2' psi2 + psi1' psi1) / omega.  Throws std::domain_error for
// x < 1.  Sums are truncated adaptively (at least 60 terms, then until the
// next term is below 1e-16 relative).
double eval_continued(double x, ContinuedWhich which);

struct Landmarks {
    double tau = 0.0;        // argmax of omega on [1,5]
    double omega_tau = 0.0;  // omega at tau
    double theta5 = 0.0;     // theta at 5
    double q = 0.0;          // mu at tau
    double c = 0.0;          // |p+|(tau) * exp(-q * theta(tau))
};

Landmarks continued_landmarks();

struct TailBound {
    double I1_lb = 0.0;
    double I2_ub = 0.0;
    double r_bound = 0.0;
    bool cn_negative = false;
};

// Numeric reproduction of the sign chain for the inverse coefficient c_n:
// the first two lobes I1, I2 of the oscillatory integral of |p+|^{-n}
// sin(n theta) over [1, alpha] plus the remainder bound
// (alpha/n) psi2(alpha)^{-n}; c_n < 0 is certified numerically when
// I1 - I2 - r_bound > 0.  Requires odd n >= 21.  This illustrates the
// analytic argument; exact signs come from revert_series.
TailBound haagerup_tail_bound(int n, double alpha = 5.0);

}  // namespace quatgro
