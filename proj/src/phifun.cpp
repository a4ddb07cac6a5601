#include "quatgro/phifun.hpp"

#include <stdexcept>
#include <vector>

namespace quatgro {

namespace {

mpz_class double_factorial(long n) {
    if (n < -1) throw std::invalid_argument("double factorial of n < -1");
    mpz_class out = 1;
    for (long v = n; v >= 2; v -= 2) out *= v;
    return out;
}

mpz_class factorial(long n) {
    mpz_class out = 1;
    for (long v = 2; v <= n; ++v) out *= v;
    return out;
}

mpz_class pow2(long e) {
    mpz_class out = 1;
    mpz_mul_2exp(out.get_mpz_t(), out.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(e));
    return out;
}

BigRational ratio(const mpz_class& num, const mpz_class& den) {
    BigRational r(num, den);
    r.canonicalize();
    return r;
}

RationalFunction recip_xpow(long p) {
    return RationalFunction(Poly::constant(1), Poly::monomial(1,
                            static_cast<std::size_t>(p)));
}

Poly poly_x2_minus_1() {
    return Poly(std::vector<BigRational>{-1, 0, 1});
}

// Tail replacement term t / (x^p * (x^2 - 1)).
RationalFunction tail_term(const BigRational& t, long p) {
    return RationalFunction(Poly::constant(t),
                            Poly::monomial(1, static_cast<std::size_t>(p)) *
                                poly_x2_minus_1());
}

// Powers of y = 1 - 1/x^2 up to y^max_pow.
std::vector<RationalFunction> y_powers(long max_pow) {
    std::vector<RationalFunction> out;
    out.push_back(RationalFunction::constant(1));
    const RationalFunction y(poly_x2_minus_1(), Poly::monomial(1, 2));
    for (long k = 1; k <= max_pow; ++k) out.push_back(out.back() * y);
    return out;
}

}  // namespace

BigRational phi_c(long k) {
    if (k < 2) throw std::invalid_argument("phi_c needs k >= 2");
    const mpz_class f = factorial(k);
    return ratio(double_factorial(2 * k - 5) * double_factorial(2 * k - 1),
                 pow2(2 * k - 2) * f * f);
}

BigRational phi_d(long k) {
    if (k < 2) throw std::invalid_argument("phi_d needs k >= 2");
    return ratio(double_factorial(2 * k - 5) * double_factorial(2 * k - 1),
                 pow2(2 * k - 2) * factorial(k) * factorial(k - 1));
}

BigRational phi_e(long k) {
    if (k < 2) throw std::invalid_argument("phi_e needs k >= 2");
    return ratio(double_factorial(2 * k - 5) * double_factorial(2 * k + 1),
                 pow2(2 * k - 2) * factorial(k) * factorial(k - 1));
}

BigRational phi_a(long k) {
    if (k < 0) throw std::invalid_argument("phi_a needs k >= 0");
    return ratio(double_factorial(2 * k - 1) * double_factorial(2 * k + 3),
                 pow2(2 * k) * factorial(k) * factorial(k + 2));
}

BigRational phi_b(long k) {
    if (k < 0) throw std::invalid_argument("phi_b needs k >= 0");
    return ratio(double_factorial(2 * k - 1) * double_factorial(2 * k + 3),
                 pow2(2 * k) * factorial(k) * factorial(k + 1));
}

RationalFunction build_phi(int m, PhiKind kind) {
    if (m < 2) throw std::invalid_argument("build_phi needs m >= 2");
    const RationalFunction x_sq =
        RationalFunction::from_poly(Poly::monomial(1, 2));

    switch (kind) {
        case PhiKind::phi1_trunc:
        case PhiKind::phi1_upper: {
            const bool upper = (kind == PhiKind::phi1_upper);
            RationalFunction acc =
                RationalFunction::constant(BigRational(4, 3)) - recip_xpow(2);
            const long last = upper ? m - 1 : m;
            for (long k = 2; k <= last; ++k) {
                acc = acc + recip_xpow(2 * k).scaled(phi_c(k));
            }
            if (upper) acc = acc + tail_term(phi_c(m), 2 * (m - 1));
            return acc.scaled(BigRational(3, 4));
        }
        case PhiKind::dphi1_trunc:
        case PhiKind::dphi1_lower: {
            const bool lower = (kind == PhiKind::dphi1_lower);
            RationalFunction acc = recip_xpow(3);
            const long last = lower ? m - 1 : m;
            for (long k = 2; k <= last; ++k) {
                acc = acc - recip_xpow(2 * k + 1).scaled(phi_d(k));
            }
            if (lower) acc = acc - tail_term(phi_d(m), 2 * m - 1);
            return acc.scaled(BigRational(3, 2));
        }
        case PhiKind::ddphi1_trunc:
        case PhiKind::ddphi1_upper: {
            const bool upper = (kind == PhiKind::ddphi1_upper);
            RationalFunction acc = recip_xpow(4).scaled(-3);
            const long last = upper ? m - 1 : m;
            for (long k = 2; k <= last; ++k) {
                acc = acc + recip_xpow(2 * k + 2).scaled(phi_e(k));
            }
            if (upper) acc = acc + tail_term(phi_e(m), 2 * m);
            return acc.scaled(BigRational(3, 2));
        }
        case PhiKind::phi2_trunc:
        case PhiKind::phi2_upper: {
            const bool upper = (kind == PhiKind::phi2_upper);
            const auto yp = y_powers(m + 2);
            RationalFunction acc;
            const long last = upper ? m - 1 : m;
            for (long k = 0; k <= last; ++k) {
                acc = acc + yp[static_cast<std::size_t>(k + 2)].scaled(
                                phi_a(k));
            }
            if (upper) {
                acc = acc + (yp[static_cast<std::size_t>(m + 2)] * x_sq)
                                .scaled(phi_a(m));
            }
            return acc;
        }
        case PhiKind::dphi2_trunc:
        case PhiKind::dphi2_upper: {
            const bool upper = (kind == PhiKind::dphi2_upper);
            const auto yp = y_powers(m + 1);
            RationalFunction acc;
            const long last = upper ? m - 1 : m;
            for (long k = 0; k <= last; ++k) {
                acc = acc + yp[static_cast<std::size_t>(k + 1)].scaled(
                                phi_b(k));
            }
            if (upper) {
                acc = acc + (yp[static_cast<std::size_t>(m + 1)] * x_sq)
                                .scaled(phi_b(m));
            }
            return acc * recip_xpow(3).scaled(2);
        }
        case PhiKind::ddphi2_trunc: {
            const auto yp = y_powers(m);
            RationalFunction acc;
            for (long k = 0; k <= m; ++k) {
                const Poly lin(std::vector<BigRational>{2 * k + 5, 0, -3});
                acc = acc + (yp[static_cast<std::size_t>(k)] *
                             RationalFunction::from_poly(lin))
                                .scaled(phi_b(k));
            }
            return acc * recip_xpow(6).scaled(2);
        }
    }
    throw std::invalid_argument("unknown truncation kind");
}

}  // namespace quatgro
