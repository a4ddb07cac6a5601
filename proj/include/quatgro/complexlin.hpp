#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace quatgro {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

struct HermEig {
    RVec values;   // ascending
    CMat vectors;  // columns
};

/// Eigendecomposition of a Hermitian matrix. Throws if the input is not
/// Hermitian within tol.
inline HermEig eig_hermitian(const CMat& H, double tol = 1e-8) {
    if (H.rows() != H.cols()) throw std::invalid_argument("eig_hermitian: square matrix required");
    if ((H - H.adjoint()).cwiseAbs().maxCoeff() > tol * (1.0 + H.cwiseAbs().maxCoeff()))
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (H + H.adjoint()));
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_hermitian: eigensolver failed");
    return HermEig{es.eigenvalues(), es.eigenvectors()};
}

struct SymEig {
    RVec values;
    RMat vectors;
};

inline SymEig eig_symmetric(const RMat& S) {
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (S + S.transpose()));
    if (es.info() != Eigen::Success) throw std::runtime_error("eig_symmetric: eigensolver failed");
    return SymEig{es.eigenvalues(), es.eigenvectors()};
}

inline int numerical_rank(const CMat& M, double tol = 1e-8) {
    Eigen::JacobiSVD<CMat> svd(M);
    int r = 0;
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
        if (svd.singularValues()(i) > tol) ++r;
    return r;
}

}  // namespace quatgro
