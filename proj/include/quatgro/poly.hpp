#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace quatgro {

using BigRational = mpq_class;

// Dense univariate polynomial over exact rationals; trailing zero
// coefficients are stripped so degree() is consistent.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<BigRational> coeffs);

    static Poly constant(const BigRational& c);
    static Poly monomial(const BigRational& c, std::size_t power);

    bool is_zero() const { return coeffs_.empty(); }
    // Degree of the zero polynomial is reported as -1.
    long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
    const std::vector<BigRational>& coeffs() const { return coeffs_; }
    const BigRational& leading() const;

    BigRational operator()(const BigRational& x) const;
    Poly derivative() const;
    Poly scaled(const BigRational& c) const;

    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a);
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

private:
    void trim();
    std::vector<BigRational> coeffs_;  // coeffs_[i] multiplies x^i
};

// Removes the highest power of x dividing p and returns that multiplicity.
std::size_t strip_root_zero(Poly& p);

// Divides out (x - r) as many times as it divides p; returns the
// multiplicity (0 when r is not a root).
std::size_t strip_root(Poly& p, const BigRational& r);

bool has_only_even_powers(const Poly& p);

// For p with only even powers, returns q with p(x) = q(x^2).
Poly even_decimate(const Poly& p);

// Exact count of distinct real roots of p in (a, b] by a Sturm chain over
// primitive integer polynomials.  Requires a < b and a nonzero p.  If an
// endpoint happens to be a root the interval is shrunk toward the interior
// by the exact nudge 1/1000000 and *nudged is set when provided.
long sturm_count(const Poly& p, BigRational a, BigRational b,
                 bool* nudged = nullptr);

}  // namespace quatgro
