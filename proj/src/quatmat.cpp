#include "quatgro/quatmat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace quatgro {

QuatVector& QuatVector::operator+=(const QuatVector& o) {
    if (size() != o.size()) throw std::invalid_argument("QuatVector: size mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

QuatVector& QuatVector::operator-=(const QuatVector& o) {
    if (size() != o.size()) throw std::invalid_argument("QuatVector: size mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

QuatVector operator*(QuatVector x, const Quaternion& q) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] * q;
    return x;
}

Quaternion inner_product(const QuatVector& x, const QuatVector& y) {
    if (x.size() != y.size()) throw std::invalid_argument("inner_product: size mismatch");
    Quaternion s;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i].conj() * y[i];
    return s;
}

double norm(const QuatVector& x) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i].norm2();
    return std::sqrt(s);
}

QuatMatrix QuatMatrix::identity(std::size_t n) {
    QuatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
    return m;
}

QuatMatrix QuatMatrix::adjoint() const {
    QuatMatrix r(n_, m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j).conj();
    return r;
}

QuatMatrix QuatMatrix::conjugate() const {
    QuatMatrix r(m_, n_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(i, j) = (*this)(i, j).conj();
    return r;
}

QuatMatrix QuatMatrix::transpose() const {
    QuatMatrix r(n_, m_);
    for (std::size_t i = 0; i < m_; ++i)
        for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
}

QuatMatrix& QuatMatrix::operator+=(const QuatMatrix& o) {
    if (m_ != o.m_ || n_ != o.n_) throw std::invalid_argument("QuatMatrix: shape mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
}

QuatMatrix& QuatMatrix::operator-=(const QuatMatrix& o) {
    if (m_ != o.m_ || n_ != o.n_) throw std::invalid_argument("QuatMatrix: shape mismatch");
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
}

QuatMatrix& QuatMatrix::operator*=(double s) {
    for (auto& q : e_) q *= s;
    return *this;
}

QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("QuatMatrix: product shape mismatch");
    QuatMatrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Quaternion& aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

QuatVector operator*(const QuatMatrix& a, const QuatVector& x) {
    if (a.cols() != x.size()) throw std::invalid_argument("QuatMatrix: vector shape mismatch");
    QuatVector r(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r[i] += a(i, j) * x[j];
    return r;
}

double QuatMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& q : e_) m = std::max(m, q.norm());
    return m;
}

double max_abs_diff(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            m = std::max(m, max_abs_diff(a(i, j), b(i, j)));
    return m;
}

bool is_self_adjoint(const QuatMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i; j < a.cols(); ++j)
            if (max_abs_diff(a(i, j), a(j, i).conj()) > tol) return false;
    return true;
}

SelfAdjointQuatMatrix::SelfAdjointQuatMatrix(QuatMatrix a, double tol) : a_(std::move(a)) {
    if (!is_self_adjoint(a_, tol * (1.0 + a_.max_abs())))
        throw std::invalid_argument("SelfAdjointQuatMatrix: input is not self-adjoint");
    // Snap to exact adjoint symmetry so downstream identities hold to rounding.
    for (std::size_t i = 0; i < a_.rows(); ++i) {
        a_(i, i) = Quaternion(a_(i, i).real());
        for (std::size_t j = i + 1; j < a_.cols(); ++j) {
            Quaternion avg = (a_(i, j) + a_(j, i).conj()) * 0.5;
            a_(i, j) = avg;
            a_(j, i) = avg.conj();
        }
    }
}

CMat embed_hatC(const QuatMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    CMat h = CMat::Zero(2 * r, 2 * c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            auto [z, w] = m(i, j).complex_pair();
            h(i, j) = z;
            h(i, c + j) = w;
            h(r + i, j) = -std::conj(w);
            h(r + i, c + j) = std::conj(z);
        }
    return h;
}

QuatMatrix collapse_hatC(const CMat& h) {
    if (h.rows() % 2 != 0 || h.cols() % 2 != 0)
        throw std::invalid_argument("collapse_hatC: dimensions must be even");
    const std::size_t r = static_cast<std::size_t>(h.rows()) / 2;
    const std::size_t c = static_cast<std::size_t>(h.cols()) / 2;
    QuatMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            Complex z = 0.5 * (h(i, j) + std::conj(h(r + i, c + j)));
            Complex w = 0.5 * (h(i, c + j) - std::conj(h(r + i, j)));
            m(i, j) = Quaternion::from_complex_pair(z, w);
        }
    return m;
}

CVec vtilde(const QuatVector& x) {
    const std::size_t n = x.size();
    CVec v(2 * n);
    for (std::size_t t = 0; t < n; ++t) {
        auto [z, w] = x[t].complex_pair();
        v(t) = z;
        v(n + t) = -std::conj(w);
    }
    return v;
}

QuatVector vtilde_inverse(const CVec& v) {
    if (v.size() % 2 != 0) throw std::invalid_argument("vtilde_inverse: odd length");
    const std::size_t n = static_cast<std::size_t>(v.size()) / 2;
    QuatVector x(n);
    for (std::size_t t = 0; t < n; ++t)
        x[t] = Quaternion::from_complex_pair(v(t), -std::conj(v(n + t)));
    return x;
}

QuatEig eig_self_adjoint(const SelfAdjointQuatMatrix& a) {
    const std::size_t n = a.size();
    HermEig he = eig_hermitian(embed_hatC(a.mat()));

    // Eigenvalues of the embedding come in equal pairs; group nearly equal
    // values, keeping every group of even size, then reduce each doubled
    // eigenspace to a quaternion orthonormal basis of half the dimension.
    const double scale = std::max(1.0, std::abs(he.values(0)));
    const double scale2 = std::max(scale, std::abs(he.values(he.values.size() - 1)));
    const double ctol = 1e-8 * scale2;

    std::vector<std::pair<std::size_t, std::size_t>> groups;  // [begin, end)
    std::size_t begin = 0;
    for (std::size_t i = 1; i < static_cast<std::size_t>(he.values.size()); ++i) {
        if (he.values(i) - he.values(i - 1) > ctol) {
            groups.emplace_back(begin, i);
            begin = i;
        }
    }
    groups.emplace_back(begin, static_cast<std::size_t>(he.values.size()));
    for (std::size_t g = 0; g + 1 < groups.size(); ++g) {
        if ((groups[g].second - groups[g].first) % 2 != 0) {
            groups[g].second = groups[g + 1].second;
            groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(g) + 1);
            --g;
        }
    }
    if ((groups.back().second - groups.back().first) % 2 != 0)
        throw std::runtime_error("eig_self_adjoint: eigenvalue pairing failed");

    QuatEig out;
    out.vectors = QuatMatrix(n, n);
    std::size_t col = 0;
    for (auto [b, e] : groups) {
        const std::size_t pairs = (e - b) / 2;
        double lambda = 0.0;
        std::vector<QuatVector> cand;
        for (std::size_t c = b; c < e; ++c) {
            lambda += he.values(c);
            QuatVector x(n);
            for (std::size_t t = 0; t < n; ++t)
                x[t] = Quaternion::from_complex_pair(he.vectors(t, c),
                                                     -std::conj(he.vectors(n + t, c)));
            cand.push_back(std::move(x));
        }
        lambda /= static_cast<double>(e - b);
        std::vector<QuatVector> basis = gram_schmidt(cand);
        if (basis.size() != pairs)
            throw std::runtime_error("eig_self_adjoint: eigenvalue pairing failed");
        for (const auto& v : basis) {
            out.values.push_back(lambda);
            for (std::size_t t = 0; t < n; ++t) out.vectors(t, col) = v[t];
            ++col;
        }
    }
    return out;
}

bool is_psd(const SelfAdjointQuatMatrix& a, double tol) {
    HermEig he = eig_hermitian(embed_hatC(a.mat()));
    return he.values(0) >= -tol;
}

SelfAdjointQuatMatrix sqrt_psd(const SelfAdjointQuatMatrix& a) {
    QuatEig eg = eig_self_adjoint(a);
    const std::size_t n = a.size();
    for (double v : eg.values)
        if (v < -1e-9) throw std::domain_error("sqrt_psd: matrix is not positive semidefinite");
    QuatMatrix scaled = eg.vectors;
    for (std::size_t j = 0; j < n; ++j) {
        const double s = std::sqrt(std::max(0.0, eg.values[j]));
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= s;
    }
    QuatMatrix b = scaled * eg.vectors.adjoint();
    QuatMatrix sym = (b + b.adjoint()) * 0.5;
    return SelfAdjointQuatMatrix(std::move(sym), 1e-6);
}

std::vector<QuatVector> gram_vectors(const SelfAdjointQuatMatrix& a) {
    if (!is_psd(a)) throw std::domain_error("gram_vectors: matrix is not positive semidefinite");
    const std::size_t n = a.size();
    constexpr double kPivotCut = 1e-12;

    // Cholesky A = L L* over the quaternions; zero pivots get zero columns.
    QuatMatrix l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double d = a(j, j).real();
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k).norm2();
        if (d <= kPivotCut) {
            l(j, j) = Quaternion(0.0);
            continue;
        }
        const double ljj = std::sqrt(d);
        l(j, j) = Quaternion(ljj);
        for (std::size_t i = j + 1; i < n; ++i) {
            Quaternion s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k).conj();
            l(i, j) = s / ljj;
        }
    }

    std::vector<QuatVector> xs;
    xs.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        QuatVector x(n);
        for (std::size_t k = 0; k < n; ++k) x[k] = l(i, k).conj();
        xs.push_back(std::move(x));
    }
    return xs;
}

QuatMatrix hadamard(const QuatMatrix& a, const QuatMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hadamard: shape mismatch");
    QuatMatrix r(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) r(i, j) = a(i, j) * b(i, j);
    return r;
}

QuatMatrix kron(const QuatMatrix& a, const QuatMatrix& b) {
    QuatMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

QuatVector kron(const QuatVector& u, const QuatVector& v) {
    QuatVector r(u.size() * v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t k = 0; k < v.size(); ++k) r[i * v.size() + k] = u[i] * v[k];
    return r;
}

SelfAdjointQuatMatrix correlation_power(const SelfAdjointQuatMatrix& a0, int m) {
    const std::size_t n = a0.size();
    for (std::size_t i = 0; i < n; ++i)
        if (std::abs(a0(i, i).real() - 1.0) > 1e-8)
            throw std::domain_error("correlation_power: diagonal is not 1");
    if (!is_psd(a0)) throw std::domain_error("correlation_power: input is not PSD");
    if (m < 0) throw std::domain_error("correlation_power: negative exponent");
    QuatMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Quaternion& q = a0(i, j);
            r(i, j) = q * std::pow(q.norm2(), m);
        }
    return SelfAdjointQuatMatrix(std::move(r));
}

std::vector<QuatVector> gram_schmidt(const std::vector<QuatVector>& vectors) {
    if (vectors.empty()) throw std::invalid_argument("gram_schmidt: empty input");
    constexpr double kDropTol = 1e-10;
    std::vector<QuatVector> out;
    for (const auto& v : vectors) {
        QuatVector w = v;
        for (const auto& q : out) w -= q * inner_product(q, w);
        // One re-orthogonalization pass for numerical stability.
        for (const auto& q : out) w -= q * inner_product(q, w);
        const double nn = norm(w);
        if (nn > kDropTol) out.push_back(w * Quaternion(1.0 / nn));
    }
    if (out.empty()) throw std::invalid_argument("gram_schmidt: all vectors dependent or zero");
    return out;
}

int rank(const QuatMatrix& m) {
    QuatMatrix a = m;
    const std::size_t rows = a.rows(), cols = a.cols();
    const double thresh = 1e-10 * std::max(1.0, a.max_abs());
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        double best = a(r, c).norm();
        for (std::size_t i = r + 1; i < rows; ++i)
            if (a(i, c).norm() > best) {
                best = a(i, c).norm();
                piv = i;
            }
        if (best <= thresh) continue;
        if (piv != r)
            for (std::size_t j = 0; j < cols; ++j) std::swap(a(piv, j), a(r, j));
        const Quaternion inv = a(r, c).inverse();
        for (std::size_t j = 0; j < cols; ++j) a(r, j) = inv * a(r, j);
        for (std::size_t i = r + 1; i < rows; ++i) {
            const Quaternion f = a(i, c);
            if (f.norm() <= thresh) continue;
            for (std::size_t j = 0; j < cols; ++j) a(i, j) -= f * a(r, j);
        }
        ++r;
    }
    return static_cast<int>(r);
}

}  // namespace quatgro
