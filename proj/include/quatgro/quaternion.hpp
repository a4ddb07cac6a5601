#pragma once

#include <array>
#include <complex>
#include <iosfwd>

namespace quatgro {

using Complex = std::complex<double>;

/// Element of the real quaternion algebra, a = a0 + a1*i + a2*j + a3*k.
///
/// Multiplication follows the Hamilton product table (ij = k, jk = i, ki = j,
/// squares of the units are -1) and is associative but not commutative.
struct Quaternion {
    double a0 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double r) : a0(r) {}
    constexpr Quaternion(double w, double x, double y, double z)
        : a0(w), a1(x), a2(y), a3(z) {}

    /// Builds z + w*j from the complex pair (z, w).
    static Quaternion from_complex_pair(Complex z, Complex w) {
        return {z.real(), z.imag(), w.real(), w.imag()};
    }

    static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

    /// Scalar (real) part.
    constexpr double real() const { return a0; }

    /// Conjugate: negates the i, j, k components.
    constexpr Quaternion conj() const { return {a0, -a1, -a2, -a3}; }

    /// Squared modulus a*conj(a) = a0^2 + a1^2 + a2^2 + a3^2.
    constexpr double norm2() const { return a0 * a0 + a1 * a1 + a2 * a2 + a3 * a3; }

    double norm() const;

    /// Multiplicative inverse conj(a)/|a|^2. Throws std::domain_error at 0.
    Quaternion inverse() const;

    /// The complex pair (z, w) with *this = z + w*j.
    std::array<Complex, 2> complex_pair() const {
        return {Complex(a0, a1), Complex(a2, a3)};
    }

    constexpr Quaternion operator-() const { return {-a0, -a1, -a2, -a3}; }

    Quaternion& operator+=(const Quaternion& b) {
        a0 += b.a0; a1 += b.a1; a2 += b.a2; a3 += b.a3;
        return *this;
    }
    Quaternion& operator-=(const Quaternion& b) {
        a0 -= b.a0; a1 -= b.a1; a2 -= b.a2; a3 -= b.a3;
        return *this;
    }
    Quaternion& operator*=(double s) {
        a0 *= s; a1 *= s; a2 *= s; a3 *= s;
        return *this;
    }
    Quaternion& operator/=(double s) { return *this *= (1.0 / s); }

    friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
    friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
    friend Quaternion operator*(Quaternion a, double s) { return a *= s; }
    friend Quaternion operator*(double s, Quaternion a) { return a *= s; }
    friend Quaternion operator/(Quaternion a, double s) { return a /= s; }
    friend Quaternion operator*(const Quaternion& a, const Quaternion& b);

    friend bool operator==(const Quaternion& a, const Quaternion& b) = default;
};

/// Hamilton product.
Quaternion operator*(const Quaternion& a, const Quaternion& b);

/// Largest absolute component difference, for tolerance checks.
double max_abs_diff(const Quaternion& a, const Quaternion& b);

/// Behaviour of sign_quat at the origin. The two callers of the sign function
/// need different conventions, so this is always an explicit parameter.
enum class SignConvention {
    zero_maps_to_zero,
    zero_maps_to_one,
};

/// a/|a| for a != 0; the convention decides the value at 0.
Quaternion sign_quat(const Quaternion& a, SignConvention convention);

/// 2x2 complex representation [[z, w], [-conj(w), conj(z)]] of a = z + w*j.
/// Multiplicative: embed_c2(ab) = embed_c2(a)*embed_c2(b); det = |a|^2 and
/// trace = 2*Re(a).
std::array<std::array<Complex, 2>, 2> embed_c2(const Quaternion& a);

/// 4x4 real representation obtained from embed_c2 by writing each complex
/// entry as a 2x2 real block; a real-algebra homomorphism.
std::array<std::array<double, 4>, 4> embed_r4(const Quaternion& a);

std::ostream& operator<<(std::ostream& os, const Quaternion& a);

}  // namespace quatgro
