#include "quatgro/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace quatgro {

namespace {

// Integer polynomials, used for the Sturm chain so all arithmetic stays in
// mpz with gcd-based content removal between steps.
using PolyZ = std::vector<mpz_class>;

void trim_z(PolyZ& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

long deg_z(const PolyZ& p) { return static_cast<long>(p.size()) - 1; }

PolyZ derivative_z(const PolyZ& p) {
    PolyZ d;
    for (std::size_t i = 1; i < p.size(); ++i) {
        d.push_back(p[i] * static_cast<long>(i));
    }
    trim_z(d);
    return d;
}

void make_primitive(PolyZ& p) {
    if (p.empty()) return;
    mpz_class content = 0;
    for (const auto& c : p) {
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.get_mpz_t());
        if (content == 1) break;
    }
    if (content > 1) {
        for (auto& c : p) {
            mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), content.get_mpz_t());
        }
    }
}

PolyZ to_integer_primitive(const Poly& p) {
    mpz_class den_lcm = 1;
    for (const auto& c : p.coeffs()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(),
                c.get_den().get_mpz_t());
    }
    PolyZ out;
    out.reserve(p.coeffs().size());
    for (const auto& c : p.coeffs()) {
        mpz_class scale;
        mpz_divexact(scale.get_mpz_t(), den_lcm.get_mpz_t(),
                     c.get_den().get_mpz_t());
        out.push_back(c.get_num() * scale);
    }
    trim_z(out);
    make_primitive(out);
    return out;
}

// Remainder of lc(g)^t * f modulo g where t counts the reduction steps,
// negated when lc(g)^t > 0 so the result equals the next Sturm chain member
// up to a positive rational factor.
PolyZ next_sturm_member(const PolyZ& f, const PolyZ& g) {
    PolyZ r = f;
    const mpz_class& m = g.back();
    long steps = 0;
    while (!r.empty() && deg_z(r) >= deg_z(g)) {
        const long shift = deg_z(r) - deg_z(g);
        const mpz_class lead = r.back();
        for (auto& c : r) c *= m;
        for (std::size_t i = 0; i < g.size(); ++i) {
            r[static_cast<std::size_t>(shift) + i] -= lead * g[i];
        }
        trim_z(r);
        ++steps;
    }
    const bool scale_positive = (sgn(m) > 0) || (steps % 2 == 0);
    if (scale_positive) {
        for (auto& c : r) c = -c;
    }
    make_primitive(r);
    return r;
}

int sign_at(const PolyZ& p, const BigRational& x) {
    if (p.empty()) return 0;
    const mpz_class& n = x.get_num();
    const mpz_class& d = x.get_den();
    mpz_class acc = p.back();
    mpz_class dp = 1;
    for (long i = deg_z(p) - 1; i >= 0; --i) {
        dp *= d;
        acc = acc * n + p[static_cast<std::size_t>(i)] * dp;
    }
    return sgn(acc);
}

// Counts sign changes in a streamed sequence, skipping zeros.
struct VariationCounter {
    int last = 0;
    long changes = 0;
    void push(int s) {
        if (s == 0) return;
        if (last != 0 && s != last) ++changes;
        last = s;
    }
};

}  // namespace

Poly::Poly(std::vector<BigRational> coeffs) : coeffs_(std::move(coeffs)) {
    for (auto& c : coeffs_) c.canonicalize();
    trim();
}

Poly Poly::constant(const BigRational& c) {
    return Poly(std::vector<BigRational>{c});
}

Poly Poly::monomial(const BigRational& c, std::size_t power) {
    std::vector<BigRational> v(power + 1, BigRational(0));
    v[power] = c;
    return Poly(std::move(v));
}

const BigRational& Poly::leading() const {
    if (coeffs_.empty()) {
        throw std::invalid_argument("leading coefficient of zero polynomial");
    }
    return coeffs_.back();
}

BigRational Poly::operator()(const BigRational& x) const {
    BigRational acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = acc * x + *it;
    }
    return acc;
}

Poly Poly::derivative() const {
    std::vector<BigRational> d;
    for (std::size_t i = 1; i < coeffs_.size(); ++i) {
        d.push_back(coeffs_[i] * static_cast<long>(i));
    }
    return Poly(std::move(d));
}

Poly Poly::scaled(const BigRational& c) const {
    if (c == 0) return Poly();
    std::vector<BigRational> out = coeffs_;
    for (auto& v : out) v *= c;
    return Poly(std::move(out));
}

void Poly::trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

Poly operator+(const Poly& a, const Poly& b) {
    std::vector<BigRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()),
                                 BigRational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) out[i] += a.coeffs_[i];
    for (std::size_t i = 0; i < b.coeffs_.size(); ++i) out[i] += b.coeffs_[i];
    return Poly(std::move(out));
}

Poly operator-(const Poly& a, const Poly& b) { return a + (-b); }

Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return Poly();
    std::vector<BigRational> out(a.coeffs_.size() + b.coeffs_.size() - 1,
                                 BigRational(0));
    for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
        if (a.coeffs_[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
            out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return Poly(std::move(out));
}

Poly operator-(const Poly& a) {
    std::vector<BigRational> out = a.coeffs_;
    for (auto& c : out) c = -c;
    return Poly(std::move(out));
}

bool operator==(const Poly& a, const Poly& b) {
    return a.coeffs_ == b.coeffs_;
}

std::size_t strip_root_zero(Poly& p) {
    if (p.is_zero()) return 0;
    std::size_t v = 0;
    const auto& c = p.coeffs();
    while (v < c.size() && c[v] == 0) ++v;
    if (v > 0) {
        std::vector<BigRational> out(c.begin() + static_cast<long>(v),
                                     c.end());
        p = Poly(std::move(out));
    }
    return v;
}

std::size_t strip_root(Poly& p, const BigRational& r) {
    std::size_t mult = 0;
    while (!p.is_zero() && p.degree() >= 1 && p(r) == 0) {
        const auto& c = p.coeffs();
        std::vector<BigRational> q(c.size() - 1, BigRational(0));
        BigRational carry = 0;
        for (long i = static_cast<long>(c.size()) - 1; i >= 1; --i) {
            carry = c[static_cast<std::size_t>(i)] + r * carry;
            q[static_cast<std::size_t>(i) - 1] = carry;
        }
        p = Poly(std::move(q));
        ++mult;
    }
    return mult;
}

bool has_only_even_powers(const Poly& p) {
    const auto& c = p.coeffs();
    for (std::size_t i = 1; i < c.size(); i += 2) {
        if (c[i] != 0) return false;
    }
    return true;
}

Poly even_decimate(const Poly& p) {
    if (!has_only_even_powers(p)) {
        throw std::invalid_argument("even_decimate needs only even powers");
    }
    std::vector<BigRational> out;
    const auto& c = p.coeffs();
    for (std::size_t i = 0; i < c.size(); i += 2) out.push_back(c[i]);
    return Poly(std::move(out));
}

long sturm_count(const Poly& p, BigRational a, BigRational b, bool* nudged) {
    if (p.is_zero()) {
        throw std::invalid_argument("sturm_count of the zero polynomial");
    }
    if (!(a < b)) {
        throw std::invalid_argument("sturm_count needs a < b");
    }
    if (nudged != nullptr) *nudged = false;
    const BigRational nudge(1, 1000000);
    while (p(a) == 0) {
        a += nudge;
        if (nudged != nullptr) *nudged = true;
        if (!(a < b)) {
            throw std::runtime_error("sturm_count interval collapsed");
        }
    }
    while (p(b) == 0) {
        b -= nudge;
        if (nudged != nullptr) *nudged = true;
        if (!(a < b)) {
            throw std::runtime_error("sturm_count interval collapsed");
        }
    }

    PolyZ cur = to_integer_primitive(p);
    if (deg_z(cur) <= 0) return 0;

    VariationCounter va;
    VariationCounter vb;
    va.push(sign_at(cur, a));
    vb.push(sign_at(cur, b));

    PolyZ nxt = derivative_z(cur);
    make_primitive(nxt);
    while (!nxt.empty()) {
        va.push(sign_at(nxt, a));
        vb.push(sign_at(nxt, b));
        if (deg_z(nxt) == 0) break;
        PolyZ rem = next_sturm_member(cur, nxt);
        cur = std::move(nxt);
        nxt = std::move(rem);
    }
    return va.changes - vb.changes;
}

}  // namespace quatgro
