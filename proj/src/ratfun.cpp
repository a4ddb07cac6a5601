#include "quatgro/ratfun.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace quatgro {

RationalFunction::RationalFunction(Poly num, Poly den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) {
        throw std::invalid_argument("rational function with zero denominator");
    }
    reduce();
}

RationalFunction RationalFunction::from_poly(Poly p) {
    return RationalFunction(std::move(p), Poly::constant(1));
}

RationalFunction RationalFunction::constant(const BigRational& c) {
    return from_poly(Poly::constant(c));
}

BigRational RationalFunction::operator()(const BigRational& x) const {
    const BigRational d = den_(x);
    if (d == 0) {
        throw std::domain_error("rational function pole");
    }
    return num_(x) / d;
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(),
                            den_ * den_);
}

RationalFunction RationalFunction::scaled(const BigRational& c) const {
    return RationalFunction(num_.scaled(c), den_);
}

RationalFunction RationalFunction::squared() const {
    return RationalFunction(num_ * num_, den_ * den_);
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Poly::constant(1);
        return;
    }
    // The denominators arising here factor as c * x^a * (x-1)^b * (x+1)^b,
    // so stripping those three roots is a complete gcd reduction.
    for (const BigRational& r : {BigRational(0), BigRational(1),
                                 BigRational(-1)}) {
        Poly dtest = den_;
        const std::size_t dm = (r == 0) ? strip_root_zero(dtest)
                                        : strip_root(dtest, r);
        if (dm == 0) continue;
        Poly ntest = num_;
        const std::size_t nm = (r == 0) ? strip_root_zero(ntest)
                                        : strip_root(ntest, r);
        const std::size_t common = std::min(nm, dm);
        if (common == 0) continue;
        Poly factor = (r == 0) ? Poly::monomial(1, 1)
                               : Poly(std::vector<BigRational>{-r, 1});
        Poly rebuilt = Poly::constant(1);
        for (std::size_t i = 0; i < dm - common; ++i) rebuilt = rebuilt * factor;
        den_ = dtest * rebuilt;
        rebuilt = Poly::constant(1);
        for (std::size_t i = 0; i < nm - common; ++i) rebuilt = rebuilt * factor;
        num_ = ntest * rebuilt;
    }
    const BigRational lead = den_.leading();
    if (lead != 1) {
        const BigRational inv = 1 / lead;
        num_ = num_.scaled(inv);
        den_ = den_.scaled(inv);
    }
}

RationalFunction operator+(const RationalFunction& a,
                           const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_,
                            a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a,
                           const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_,
                            a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a,
                           const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a) {
    RationalFunction out = a;
    out.num_ = -out.num_;
    return out;
}

bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
}

}  // namespace quatgro
