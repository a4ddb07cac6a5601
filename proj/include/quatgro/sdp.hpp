#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "quatgro/norms.hpp"
#include "quatgro/quatmat.hpp"

namespace quatgro {

/// Linear SDP over complex Hermitian matrices:
/// maximize <C,X> subject to <A_i,X> = b_i, <B_j,X> <= r_j, X PSD,
/// where <P,Q> = tr(PQ) (real for Hermitian arguments).
struct SdpProblem {
    int d = 0;  // Hermitian matrix dimension
    CMat objective;
    std::vector<CMat> eq_mats;
    std::vector<double> eq_rhs;
    std::vector<CMat> ineq_mats;
    std::vector<double> ineq_rhs;
};

struct SdpSolution {
    CMat X;
    double value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

struct SolverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Primal-dual interior point solve on the real symmetric embedding
/// [[Re X, -Im X], [Im X, Re X]] with Nesterov-Todd scaling and Mehrotra
/// predictor-corrector steps. Throws SolverError on failure.
SdpSolution solve(const SdpProblem& problem, double tol = 1e-9);

/// [[0, M], [M*, 0]] as a self-adjoint (m+n) x (m+n) quaternion matrix.
SelfAdjointQuatMatrix bipartite_self_adjoint(const QuatMatrix& m);

struct GrothendieckSdpResult {
    double value = 0.0;
    double gap = 0.0;
    int iterations = 0;
    QuatMatrix gram;  // (m+n) quaternion correlation matrix of the maximizer
};

/// Exact SDP characterization of the quaternion Grothendieck norm:
/// value = 1/4 max{ tr embed_hatC(bipartite(M)) H } over the structured
/// complex correlation matrices H.
GrothendieckSdpResult grothendieck_sdp_full(const QuatMatrix& m, double tol = 1e-9);
double grothendieck_sdp(const QuatMatrix& m);

/// Grothendieck SDP for a plain complex matrix (no quaternion structure):
/// 1/2 max{ Re tr([[0,B],[B*,0]] H) } over complex correlation matrices.
double grothendieck_sdp_complex(const CMat& b, double tol = 1e-9);

/// gamma norm: max over quaternion correlation matrices G of |Re tr(A conj(G))|,
/// computed through the complex embedding with both objective signs.
double gamma_sdp(const SelfAdjointQuatMatrix& a, double tol = 1e-9);

/// Gamma variant: the unit diagonal of G is relaxed to diagonal entries in [0,1].
double Gamma_sdp(const SelfAdjointQuatMatrix& a, double tol = 1e-9);

struct NesterovReport {
    double sdp_value = 0.0;
    double ascent_lower = 0.0;
    double ratio = 1.0;
    double bound = 0.0;  // 32/(9 pi)
    bool within_bound = false;
};

/// For real PSD A, the vector relaxation exceeds the scalar maximum by at
/// most a factor 32/(9 pi); this computes both sides and the ratio.
NesterovReport nesterov_check(const RMat& a, int restarts = 64, std::uint64_t seed = 1,
                              double tol = 1e-2);

QuatMatrix quat_from_real(const RMat& a);

}  // namespace quatgro
