#pragma once

#include <cstddef>
#include <vector>

#include "quatgro/complexlin.hpp"
#include "quatgro/quaternion.hpp"

namespace quatgro {

/// Vector over the quaternions, right-module convention: scalars multiply
/// entries from the right, and the inner product conjugates the first slot,
/// <x,y> = sum conj(x_i) y_i.
class QuatVector {
public:
    QuatVector() = default;
    explicit QuatVector(std::size_t n) : e_(n) {}
    explicit QuatVector(std::vector<Quaternion> entries) : e_(std::move(entries)) {}

    std::size_t size() const { return e_.size(); }
    Quaternion& operator[](std::size_t i) { return e_[i]; }
    const Quaternion& operator[](std::size_t i) const { return e_[i]; }

    QuatVector& operator+=(const QuatVector& o);
    QuatVector& operator-=(const QuatVector& o);
    friend QuatVector operator+(QuatVector a, const QuatVector& b) { return a += b; }
    friend QuatVector operator-(QuatVector a, const QuatVector& b) { return a -= b; }

    /// Right scalar multiple: (x * q)_i = x_i * q.
    friend QuatVector operator*(QuatVector x, const Quaternion& q);

    const std::vector<Quaternion>& entries() const { return e_; }

private:
    std::vector<Quaternion> e_;
};

Quaternion inner_product(const QuatVector& x, const QuatVector& y);
double norm(const QuatVector& x);

/// Dense quaternion matrix, row-major.
class QuatMatrix {
public:
    QuatMatrix() : m_(0), n_(0) {}
    QuatMatrix(std::size_t m, std::size_t n) : m_(m), n_(n), e_(m * n) {}

    static QuatMatrix identity(std::size_t n);

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }

    Quaternion& operator()(std::size_t i, std::size_t j) { return e_[i * n_ + j]; }
    const Quaternion& operator()(std::size_t i, std::size_t j) const { return e_[i * n_ + j]; }

    QuatMatrix adjoint() const;
    QuatMatrix conjugate() const;
    QuatMatrix transpose() const;

    QuatMatrix& operator+=(const QuatMatrix& o);
    QuatMatrix& operator-=(const QuatMatrix& o);
    QuatMatrix& operator*=(double s);
    friend QuatMatrix operator+(QuatMatrix a, const QuatMatrix& b) { return a += b; }
    friend QuatMatrix operator-(QuatMatrix a, const QuatMatrix& b) { return a -= b; }
    friend QuatMatrix operator*(QuatMatrix a, double s) { return a *= s; }
    friend QuatMatrix operator*(double s, QuatMatrix a) { return a *= s; }
    friend QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b);
    friend QuatVector operator*(const QuatMatrix& a, const QuatVector& x);

    double max_abs() const;

private:
    std::size_t m_, n_;
    std::vector<Quaternion> e_;
};

double max_abs_diff(const QuatMatrix& a, const QuatMatrix& b);
bool is_self_adjoint(const QuatMatrix& a, double tol = 1e-10);

/// Self-adjoint quaternion matrix; adjointness is validated at construction.
class SelfAdjointQuatMatrix {
public:
    explicit SelfAdjointQuatMatrix(QuatMatrix a, double tol = 1e-10);

    const QuatMatrix& mat() const { return a_; }
    std::size_t size() const { return a_.rows(); }
    const Quaternion& operator()(std::size_t i, std::size_t j) const { return a_(i, j); }

private:
    QuatMatrix a_;
};

/// 2m x 2n complex block embedding [[Z, W], [-conj(W), conj(Z)]] of M = Z + W j.
CMat embed_hatC(const QuatMatrix& m);

/// Inverse of embed_hatC; requires even dimensions. Off-structure parts are
/// averaged away, so the result is exact on matrices with the block symmetry.
QuatMatrix collapse_hatC(const CMat& h);

/// x = z + w j  ->  (z; -conj(w)) in C^{2n}; intertwines the matrix action:
/// embed_hatC(M) * vtilde(x) = vtilde(M x).
CVec vtilde(const QuatVector& x);
QuatVector vtilde_inverse(const CVec& v);

struct QuatEig {
    std::vector<double> values;
    QuatMatrix vectors;  // unitary, columns are right eigenvectors
};

/// Spectral decomposition A = U D U* of a self-adjoint matrix, computed by
/// diagonalizing the complex embedding and collapsing the doubled eigenspaces
/// back to quaternion form.
QuatEig eig_self_adjoint(const SelfAdjointQuatMatrix& a);

bool is_psd(const SelfAdjointQuatMatrix& a, double tol = 1e-9);
SelfAdjointQuatMatrix sqrt_psd(const SelfAdjointQuatMatrix& a);

/// Vectors x_1..x_n with <x_i, x_j> = A_ij, from a quaternion Cholesky
/// factorization; pivots below 1e-12 are treated as zero.
std::vector<QuatVector> gram_vectors(const SelfAdjointQuatMatrix& a);

QuatMatrix hadamard(const QuatMatrix& a, const QuatMatrix& b);
QuatMatrix kron(const QuatMatrix& a, const QuatMatrix& b);
QuatVector kron(const QuatVector& u, const QuatVector& v);

/// Entrywise a_ij |a_ij|^{2m} applied to a correlation matrix; the result is
/// again a correlation matrix.
SelfAdjointQuatMatrix correlation_power(const SelfAdjointQuatMatrix& a0, int m);

/// Orthonormalizes with respect to the right-module inner product; vectors
/// with residual below 1e-10 are dropped.
std::vector<QuatVector> gram_schmidt(const std::vector<QuatVector>& vectors);

/// Row rank via quaternion row echelon reduction (left row operations).
int rank(const QuatMatrix& m);

}  // namespace quatgro
