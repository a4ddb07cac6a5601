#include "quatgro/series.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "quatgro/gaussian.hpp"
#include "quatgro/quadrature.hpp"

namespace quatgro {

namespace {

constexpr double kPi = 3.14159265358979323846;

double sigma_pow(long e) { return std::pow(32.0 / (9.0 * kPi), e); }

// Truncated power series over exact rationals, indexed by powers of s; the
// odd series f(x) = x * F(x^2) is manipulated through its even core F(s).
using QSeries = std::vector<mpq_class>;

QSeries mul_trunc(const QSeries& a, const QSeries& b, std::size_t n) {
    QSeries r(n, mpq_class(0));
    for (std::size_t i = 0; i < a.size() && i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size() && i + j < n; ++j) {
            if (b[j] == 0) continue;
            r[i + j] += a[i] * b[j];
        }
    }
    return r;
}

QSeries div_trunc(const QSeries& a, const QSeries& b, std::size_t n) {
    QSeries q(n, mpq_class(0));
    for (std::size_t i = 0; i < n; ++i) {
        mpq_class acc = i < a.size() ? a[i] : mpq_class(0);
        for (std::size_t j = 1; j <= i && j < b.size(); ++j) {
            acc -= b[j] * q[i - j];
        }
        q[i] = acc / b[0];
    }
    return q;
}

// Horner composition a(c(s)) truncated to n terms; requires c[0] == 0.
QSeries compose_trunc(const QSeries& a, const QSeries& c, std::size_t n) {
    QSeries r(n, mpq_class(0));
    for (std::size_t idx = std::min(a.size(), n); idx-- > 0;) {
        r = mul_trunc(r, c, n);
        r[0] += a[idx];
    }
    return r;
}

// Core of f(phi(w)) expressed in s-space: given the even cores B of f and
// Phi of phi, returns E with f(phi(w)) = w * E(w^2).
QSeries composed_core(const QSeries& B, const QSeries& Phi, std::size_t n) {
    QSeries phi2 = mul_trunc(Phi, Phi, n);
    QSeries c(n, mpq_class(0));
    for (std::size_t i = 0; i + 1 < n; ++i) c[i + 1] = phi2[i];
    return mul_trunc(Phi, compose_trunc(B, c, n), n);
}

// Newton iteration for the compositional inverse of the odd series
// x * B(x^2).  Each step doubles the number of correct coefficients: with
// E the core of the current composition residue, the odd-series update
// phi -= (f(phi) - w) * phi' / (f(phi))' reduces in s-space to
// Phi -= (E - 1) * T(Phi) / T(E) where T multiplies slot i by (2i+1).
QSeries invert_core(const QSeries& B, std::size_t K) {
    QSeries phi{mpq_class(1) / B[0]};
    while (phi.size() < K) {
        std::size_t n = std::min(2 * phi.size(), K);
        phi.resize(n, mpq_class(0));
        QSeries e = composed_core(B, phi, n);
        QSeries et(n), pt(n);
        for (std::size_t i = 0; i < n; ++i) {
            mpq_class f(2 * static_cast<long>(i) + 1);
            et[i] = f * e[i];
            pt[i] = f * phi[i];
        }
        QSeries ratio = div_trunc(pt, et, n);
        e[0] -= 1;
        QSeries upd = mul_trunc(e, ratio, n);
        for (std::size_t i = 0; i < n; ++i) phi[i] -= upd[i];
    }
    QSeries check = composed_core(B, phi, K);
    for (std::size_t i = 0; i < K; ++i) {
        if (check[i] != (i == 0 ? 1 : 0)) {
            throw std::logic_error("series inversion failed composition check");
        }
    }
    return phi;
}

struct TermSum {
    double value = 0.0;
    std::size_t used = 0;
};

// Sums term_0 + term_1 + ... where term_{k+1} = term_k * ratio(k); stops
// once at least min_terms were taken and the next term is negligible.
template <typename Ratio>
TermSum adaptive_sum(double first, Ratio&& ratio, std::size_t min_terms,
                     std::size_t max_terms) {
    TermSum s;
    double t = first;
    for (std::size_t k = 0;; ++k) {
        s.value += t;
        s.used = k + 1;
        if (k + 1 >= max_terms) break;
        t *= ratio(k);
        if (k + 1 >= min_terms &&
            std::abs(t) < 1e-16 * std::max(1.0, std::abs(s.value))) {
            s.value += t;
            ++s.used;
            break;
        }
    }
    return s;
}

constexpr std::size_t kMinTerms = 60;

double psi1_val(double x) {
    double ix2 = 1.0 / (x * x);
    // Leading part 4/3 - x^-2, then the k >= 2 series with first term
    // (3/16) x^-4 and ratio (2k-3)(2k+1) / (4 (k+1)^2) * x^-2.
    double head = 4.0 / 3.0 - ix2;
    TermSum tail = adaptive_sum(
        (3.0 / 16.0) * ix2 * ix2,
        [ix2](std::size_t i) {
            double k = static_cast<double>(i) + 2.0;
            return (2.0 * k - 3.0) * (2.0 * k + 1.0) /
                   (4.0 * (k + 1.0) * (k + 1.0)) * ix2;
        },
        kMinTerms, 3000000);
    return (9.0 * kPi / 16.0) * (head + tail.value);
}

double psi1_deriv(double x) {
    double ix2 = 1.0 / (x * x);
    double ix3 = ix2 / x;
    // Derivative series: 2 x^-3 minus terms starting at (3/4) x^-5 with
    // ratio (2k-3)(2k+1) / (4 k (k+1)) * x^-2.
    TermSum tail = adaptive_sum(
        0.75 * ix2 * ix3,
        [ix2](std::size_t i) {
            double k = static_cast<double>(i) + 2.0;
            return (2.0 * k - 3.0) * (2.0 * k + 1.0) /
                   (4.0 * k * (k + 1.0)) * ix2;
        },
        kMinTerms, 3000000);
    return (9.0 * kPi / 16.0) * (2.0 * ix3 - tail.value);
}

double psi2_val(double x) {
    double y = 1.0 - 1.0 / (x * x);
    if (y == 0.0) return 0.0;
    // First term (3/2) y^2, ratio (2k+1)(2k+5) / (4 (k+1)(k+3)) * y.
    TermSum s = adaptive_sum(
        1.5 * y * y,
        [y](std::size_t i) {
            double k = static_cast<double>(i);
            return (2.0 * k + 1.0) * (2.0 * k + 5.0) /
                   (4.0 * (k + 1.0) * (k + 3.0)) * y;
        },
        kMinTerms, 5000000);
    return (3.0 * kPi / 16.0) * s.value;
}

double psi2_deriv(double x) {
    double y = 1.0 - 1.0 / (x * x);
    double ix3 = 1.0 / (x * x * x);
    if (y == 0.0) return 0.0;
    // First term 3 y, ratio (2k+1)(2k+5) / (4 (k+1)(k+2)) * y.
    TermSum s = adaptive_sum(
        3.0 * y,
        [y](std::size_t i) {
            double k = static_cast<double>(i);
            return (2.0 * k + 1.0) * (2.0 * k + 5.0) /
                   (4.0 * (k + 1.0) * (k + 2.0)) * y;
        },
        kMinTerms, 5000000);
    return (3.0 * kPi / 8.0) * ix3 * s.value;
}

double omega_val(double x) {
    return psi2_deriv(x) * psi1_val(x) - psi1_deriv(x) * psi2_val(x);
}

double mu_val(double x) {
    double om = omega_val(x);
    double num = psi2_deriv(x) * psi2_val(x) + psi1_deriv(x) * psi1_val(x);
    if (om == 0.0) return std::numeric_limits<double>::infinity();
    return num / om;
}

double theta_val(double x) { return std::atan2(psi2_val(x), psi1_val(x)); }

double abs_p_plus_val(double x) {
    return std::hypot(psi1_val(x), psi2_val(x));
}

template <typename F>
double golden_min(F&& f, double lo, double hi, double tol) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

double p_float(double x) { return x * eval_fH(x); }

// Solves g(x) = target for increasing g by bisection.
template <typename F>
double bisect_increasing(F&& g, double target, double lo, double hi,
                         double tol) {
    double glo = g(lo) - target;
    double ghi = g(hi) - target;
    if (!(glo <= 0.0 && ghi >= 0.0)) {
        throw std::runtime_error("bisection bracket failure");
    }
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) - target <= 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

int ExactOddSeries::coeff_sign(std::size_t k) const {
    return sgn(rational.at(k));
}

double ExactOddSeries::coeff(std::size_t k) const {
    long e = scale0 + scale_step * static_cast<long>(k);
    return rational.at(k).get_d() * sigma_pow(e);
}

double ExactOddSeries::eval(double x) const {
    double acc = 0.0;
    double xp = x;
    for (std::size_t k = 0; k < rational.size(); ++k) {
        acc += coeff(k) * xp;
        xp *= x * x;
    }
    return acc;
}

bool operator==(const ExactOddSeries& a, const ExactOddSeries& b) {
    return a.scale0 == b.scale0 && a.scale_step == b.scale_step &&
           a.rational == b.rational;
}

ExactOddSeries p_ell_coeffs(int ell, std::size_t order) {
    if (ell < 1) throw std::invalid_argument("ell must be >= 1");
    if (order == 0) throw std::invalid_argument("order must be >= 1");
    ExactOddSeries s;
    s.rational.reserve(order);
    mpq_class r(1);
    for (std::size_t k = 0; k < order; ++k) {
        s.rational.push_back(r);
        long kk = static_cast<long>(k);
        r *= mpq_class((2 * kk + 1) * (2 * kk + 1),
                       4 * (kk + 1) * (kk + ell));
    }
    return s;
}

ExactOddSeries p_coeffs(std::size_t order) {
    ExactOddSeries s = p_ell_coeffs(3, order);
    s.scale0 = -1;
    return s;
}

ExactOddSeries h_coeffs(std::size_t order) {
    ExactOddSeries s = p_ell_coeffs(2, order);
    for (mpq_class& r : s.rational) r *= mpq_class(8, 9);
    s.scale0 = -1;
    return s;
}

ExactOddSeries revert_series(const ExactOddSeries& s, std::size_t count) {
    if (count == 0) throw std::invalid_argument("count must be >= 1");
    if (s.rational.empty() || s.rational[0] == 0) {
        throw std::invalid_argument("zero leading coefficient");
    }
    if (s.scale_step % 2 != 0) {
        throw std::invalid_argument("scale step must be even for reversion");
    }
    // With sigma^u absorbed into the argument, f(x) = sigma^v G(sigma^u x)
    // for the pure rational G carrying the same coefficients, so the inverse
    // coefficients are those of G^{-1} times sigma^{-u - v(2k+1)}.
    long u = s.scale_step / 2;
    long v = s.scale0 - u;
    ExactOddSeries out;
    out.rational = invert_core(s.rational, count);
    out.scale0 = -(u + v);
    out.scale_step = -2 * v;
    return out;
}

BigRational lagrange_inverse_rational(const ExactOddSeries& s, std::size_t k) {
    if (s.rational.empty() || s.rational[0] == 0) {
        throw std::invalid_argument("zero leading coefficient");
    }
    // Coefficient extraction [s^k] (1/B)^(2k+1) / (2k+1) on the even core.
    std::size_t n = k + 1;
    QSeries r = div_trunc(QSeries{mpq_class(1)}, s.rational, n);
    QSeries p{mpq_class(1)};
    for (std::size_t i = 0; i < 2 * k + 1; ++i) p = mul_trunc(p, r, n);
    return p[k] / mpq_class(2 * static_cast<long>(k) + 1);
}

SignReport coefficient_signs(int ell, std::size_t count) {
    if (ell < 2) throw std::invalid_argument("ell must be >= 2");
    if (count > 200) throw std::invalid_argument("count must be <= 200");
    ExactOddSeries inv = revert_series(p_ell_coeffs(ell, count), count);
    SignReport report;
    report.ell = ell;
    report.signs.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        report.signs.push_back(inv.coeff_sign(k));
    }
    bool ok = !report.signs.empty() && report.signs[0] > 0;
    for (std::size_t k = 1; k < report.signs.size(); ++k) {
        ok = ok && report.signs[k] < 0;
    }
    report.first_positive_rest_negative = ok;
    return report;
}

Constants solve_constants() {
    Constants c;
    c.x0 = bisect_increasing(
        [](double x) { return p_float(x) - 9.0 * kPi * (1.0 + x) / 64.0; },
        0.0, 0.0, 1.0, 1e-12);
    c.c0 = 9.0 * kPi * (1.0 + c.x0) / 64.0;
    c.K_GH_bound = 1.0 / c.c0;
    c.K_gamma_bound = 64.0 / (9.0 * kPi) - 1.0;
    c.nesterov = 32.0 / (9.0 * kPi);

    auto ratio = [](double x) { return (1.0 + p_float(x)) / (1.0 + x); };
    double xm = golden_min(ratio, 0.0, 1.0, 1e-10);
    // Slope sign check around the reported minimizer: the valley must rise
    // on both sides, confirming an interior minimum rather than a boundary
    // artifact of the golden-section bracket.
    double step = 1e-4;
    if (!(ratio(xm - step) >= ratio(xm) && ratio(xm + step) >= ratio(xm))) {
        throw std::runtime_error("interior minimum check failed");
    }
    c.alpha_gw = ratio(xm);
    c.dd_constant = 1.0 + (1.0 - 9.0 * kPi / 32.0) / c.alpha_gw;
    return c;
}

double eval_continued(double x, ContinuedWhich which) {
    if (!(x >= 1.0)) throw std::domain_error("eval_continued requires x >= 1");
    switch (which) {
        case ContinuedWhich::psi1:
            return psi1_val(x);
        case ContinuedWhich::psi2:
            return psi2_val(x);
        case ContinuedWhich::theta:
            return theta_val(x);
        case ContinuedWhich::abs_p_plus:
            return abs_p_plus_val(x);
        case ContinuedWhich::omega:
            return omega_val(x);
        case ContinuedWhich::mu:
            return mu_val(x);
    }
    throw std::invalid_argument("unknown continued function");
}

Landmarks continued_landmarks() {
    Landmarks lm;
    lm.tau = golden_min([](double x) { return -omega_val(x); }, 1.05, 3.0,
                        1e-10);
    lm.omega_tau = omega_val(lm.tau);
    lm.theta5 = theta_val(5.0);
    lm.q = mu_val(lm.tau);
    lm.c = abs_p_plus_val(lm.tau) * std::exp(-lm.q * theta_val(lm.tau));
    return lm;
}

TailBound haagerup_tail_bound(int n, double alpha) {
    if (n < 21 || n % 2 == 0) {
        throw std::invalid_argument("n must be odd and >= 21");
    }
    if (!(alpha > 1.0)) throw std::invalid_argument("alpha must exceed 1");
    double dn = static_cast<double>(n);
    double theta_alpha = theta_val(alpha);
    if (2.0 * kPi / dn >= theta_alpha) {
        throw std::runtime_error("alpha too small for two oscillation lobes");
    }
    // x-coordinates where n*theta crosses pi and 2 pi.
    double x1 = bisect_increasing(theta_val, kPi / dn, 1.0, alpha, 1e-13);
    double x2 = bisect_increasing(theta_val, 2.0 * kPi / dn, 1.0, alpha, 1e-13);

    auto lobe = [n, dn](double x) {
        double mod = std::pow(abs_p_plus_val(x), -static_cast<double>(n));
        return mod * std::abs(std::sin(dn * theta_val(x)));
    };
    double scale = 2.0 / (kPi * dn);
    TailBound tb;
    tb.I1_lb = scale * integrate_adaptive(lobe, 1.0, x1, 1e-14);
    tb.I2_ub = scale * integrate_adaptive(lobe, x1, x2, 1e-14);
    tb.r_bound = (alpha / dn) * std::pow(psi2_val(alpha), -dn);
    tb.cn_negative = tb.I1_lb - tb.I2_ub - tb.r_bound > 0.0;
    return tb;
}

}  // namespace quatgro
