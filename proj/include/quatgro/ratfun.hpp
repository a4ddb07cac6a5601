#pragma once

#include "quatgro/poly.hpp"

namespace quatgro {

// Quotient of two exact polynomials.  Every function built in this project
// has a denominator of the form c * x^a * (x^2-1)^b, so reduction strips the
// shared multiplicities of the roots 0, 1 and -1 and then rescales the
// denominator to be monic.  The reduced representation is unique, so
// operator== can compare componentwise.
class RationalFunction {
public:
    RationalFunction() : num_(), den_(Poly::constant(1)) {}
    RationalFunction(Poly num, Poly den);

    static RationalFunction from_poly(Poly p);
    static RationalFunction constant(const BigRational& c);

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    // Exact evaluation; throws std::domain_error on a denominator zero.
    BigRational operator()(const BigRational& x) const;

    RationalFunction derivative() const;
    RationalFunction scaled(const BigRational& c) const;
    RationalFunction squared() const;

    friend RationalFunction operator+(const RationalFunction& a,
                                      const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a,
                                      const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a,
                                      const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a);
    friend bool operator==(const RationalFunction& a,
                           const RationalFunction& b);
    friend bool operator!=(const RationalFunction& a,
                           const RationalFunction& b) {
        return !(a == b);
    }

private:
    void reduce();
    Poly num_;
    Poly den_;
};

}  // namespace quatgro
