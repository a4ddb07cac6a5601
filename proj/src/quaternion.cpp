#include "quatgro/quaternion.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace quatgro {

double Quaternion::norm() const { return std::sqrt(norm2()); }

Quaternion Quaternion::inverse() const {
    const double n2 = norm2();
    if (n2 == 0.0) {
        throw std::domain_error("Quaternion::inverse: zero has no inverse");
    }
    return conj() / n2;
}

Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {
        a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
        a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
        a.a0 * b.a2 - a.a1 * b.a3 + a.a2 * b.a0 + a.a3 * b.a1,
        a.a0 * b.a3 + a.a1 * b.a2 - a.a2 * b.a1 + a.a3 * b.a0,
    };
}

double max_abs_diff(const Quaternion& a, const Quaternion& b) {
    double m = std::fabs(a.a0 - b.a0);
    m = std::max(m, std::fabs(a.a1 - b.a1));
    m = std::max(m, std::fabs(a.a2 - b.a2));
    m = std::max(m, std::fabs(a.a3 - b.a3));
    return m;
}

Quaternion sign_quat(const Quaternion& a, SignConvention convention) {
    const double n = a.norm();
    if (n == 0.0) {
        return convention == SignConvention::zero_maps_to_one ? Quaternion(1.0)
                                                              : Quaternion(0.0);
    }
    return a / n;
}

std::array<std::array<Complex, 2>, 2> embed_c2(const Quaternion& a) {
    const auto [z, w] = a.complex_pair();
    return {{{z, w}, {-std::conj(w), std::conj(z)}}};
}

std::array<std::array<double, 4>, 4> embed_r4(const Quaternion& a) {
    const double x = a.a0, y = a.a1, u = a.a2, v = a.a3;
    return {{
        {x, y, u, v},
        {-y, x, -v, u},
        {-u, v, x, -y},
        {-v, -u, y, x},
    }};
}

std::ostream& operator<<(std::ostream& os, const Quaternion& a) {
    return os << "(" << a.a0 << ", " << a.a1 << ", " << a.a2 << ", " << a.a3 << ")";
}

}  // namespace quatgro
