#include "quatgro/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <cstdlib>

namespace quatgro {

namespace {

RMat emb_real(const CMat& h) {
    const Eigen::Index d = h.rows();
    RMat y(2 * d, 2 * d);
    y.topLeftCorner(d, d) = h.real();
    y.topRightCorner(d, d) = -h.imag();
    y.bottomLeftCorner(d, d) = h.imag();
    y.bottomRightCorner(d, d) = h.real();
    return y;
}

CMat emb_collapse(const RMat& y) {
    const Eigen::Index d = y.rows() / 2;
    RMat re = 0.5 * (y.topLeftCorner(d, d) + y.bottomRightCorner(d, d));
    RMat im = 0.5 * (y.bottomLeftCorner(d, d) - y.topRightCorner(d, d));
    CMat x(d, d);
    x.real() = re;
    x.imag() = im;
    return 0.5 * (x + CMat(x.adjoint()));
}

RMat sym_power(const RMat& s, double expo, double floor_rel = 1e-14) {
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (s + s.transpose()));
    if (es.info() != Eigen::Success) throw SolverError("sdp: eigensolver failed in scaling");
    RVec lam = es.eigenvalues();
    const double lmax = std::max(lam.maxCoeff(), 1e-300);
    RVec powed(lam.size());
    for (Eigen::Index i = 0; i < lam.size(); ++i)
        powed(i) = std::pow(std::max(lam(i), floor_rel * lmax), expo);
    return es.eigenvectors() * powed.asDiagonal() * es.eigenvectors().transpose();
}

double frob(const RMat& a, const RMat& b) { return (a.array() * b.array()).sum(); }

// Largest step alpha with X + alpha D still PSD, via the minimum eigenvalue
// of L^{-1} D L^{-T} for the Cholesky factor L of X.
double max_step(const RMat& x, const RMat& d) {
    RMat xs = 0.5 * (x + x.transpose());
    Eigen::LLT<RMat> llt(xs);
    if (llt.info() != Eigen::Success) {
        // Near a low-rank optimal face the iterate can be numerically
        // singular; floor its spectrum to stay strictly inside the cone.
        Eigen::SelfAdjointEigenSolver<RMat> es(xs);
        if (es.info() != Eigen::Success) throw SolverError("sdp: iterate left the cone");
        const double lmax = std::max(es.eigenvalues().maxCoeff(), 1e-300);
        RVec lam = es.eigenvalues().cwiseMax(1e-14 * lmax);
        xs = es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
        llt.compute(xs);
        if (llt.info() != Eigen::Success) throw SolverError("sdp: iterate left the cone");
    }
    RMat m = llt.matrixL().solve(d);
    m = llt.matrixL().solve(RMat(m.transpose()));
    Eigen::SelfAdjointEigenSolver<RMat> es(0.5 * (m + m.transpose()));
    const double lmin = es.eigenvalues().minCoeff();
    if (lmin >= 0.0) return 1e30;
    return -1.0 / lmin;
}

struct RealSdp {
    int n = 0;
    RMat C;
    std::vector<RMat> A;
    RVec b;
};

struct RealSolution {
    RMat X;
    RVec y;
    double value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;
    int iterations = 0;
};

RealSolution solve_real(const RealSdp& prob, double tol) {
    const int n = prob.n;
    const int p = static_cast<int>(prob.A.size());
    RMat X = RMat::Identity(n, n);
    RMat S = RMat::Identity(n, n);
    RVec y = RVec::Zero(p);

    const double bscale = 1.0 + (p > 0 ? prob.b.cwiseAbs().maxCoeff() : 0.0);
    const double cscale = 1.0 + prob.C.cwiseAbs().maxCoeff();

    // Best contract-quality iterate so far; double precision can stall on a
    // degenerate optimal face before the path tolerance is reached, and the
    // stall exit falls back on this iterate when it meets the contract.
    RealSolution best;
    double best_merit = std::numeric_limits<double>::infinity();
    double best_rd_term = std::numeric_limits<double>::infinity();
    bool refine_tried = false;

    // Alternating projection between the affine constraint set and the PSD
    // cone. A stalled iterate often sits a few 1e-8 outside the equality
    // contract; the minimal-Frobenius correction lives in the span of the
    // constraint matrices and removes that residual without moving the
    // objective beyond the gap scale. Returns the refreshed merit.
    auto refined_merit = [&](RealSolution& sol, double rd_term) -> double {
        RMat gram(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j <= i; ++j) {
                gram(i, j) = frob(prob.A[i], prob.A[j]);
                gram(j, i) = gram(i, j);
            }
        Eigen::LDLT<RMat> gf(gram);
        if (gf.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
        RMat xr = sol.X;
        for (int round = 0; round < 5; ++round) {
            RVec r(p);
            for (int i = 0; i < p; ++i) r(i) = prob.b(i) - frob(prob.A[i], xr);
            const RVec lam = gf.solve(r);
            for (int i = 0; i < p; ++i) xr += lam(i) * prob.A[i];
            xr = 0.5 * (xr + xr.transpose());
            Eigen::SelfAdjointEigenSolver<RMat> es(xr);
            if (es.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
            if (es.eigenvalues()(0) >= -1e-9) break;
            const RVec clipped = es.eigenvalues().cwiseMax(0.0);
            xr = es.eigenvectors() * clipped.asDiagonal() *
                 es.eigenvectors().transpose();
        }
        RVec r(p);
        for (int i = 0; i < p; ++i) r(i) = prob.b(i) - frob(prob.A[i], xr);
        const double pval = frob(prob.C, xr);
        const double gap = sol.gap + std::abs(pval - sol.value);
        const double merit =
            std::max({r.cwiseAbs().maxCoeff() / (1e-8 * bscale), rd_term,
                      gap / (1e-6 * (1.0 + std::abs(pval)))});
        Eigen::SelfAdjointEigenSolver<RMat> es(xr);
        if (es.info() != Eigen::Success || es.eigenvalues()(0) < -1e-9)
            return std::numeric_limits<double>::infinity();
        sol.X = std::move(xr);
        sol.value = pval;
        sol.gap = gap;
        return merit;
    };

    constexpr int kMaxIter = 200;
    for (int iter = 1; iter <= kMaxIter; ++iter) {
        RVec ax(p);
        for (int i = 0; i < p; ++i) ax(i) = frob(prob.A[i], X);
        RVec rp = prob.b - ax;
        RMat SyA = RMat::Zero(n, n);
        for (int i = 0; i < p; ++i) SyA += y(i) * prob.A[i];
        RMat Rd = prob.C - SyA + S;

        const double gap = frob(X, S);
        const double pval = frob(prob.C, X);
        const double dval = prob.b.dot(y);
        if (rp.cwiseAbs().maxCoeff() <= tol * bscale &&
            Rd.cwiseAbs().maxCoeff() <= tol * cscale &&
            gap <= tol * (1.0 + std::abs(pval) + std::abs(dval))) {
            return RealSolution{X, y, pval, dval, gap, iter - 1};
        }

        const double merit =
            std::max({rp.cwiseAbs().maxCoeff() / (1e-8 * bscale),
                      Rd.cwiseAbs().maxCoeff() / (1e-6 * cscale),
                      gap / (1e-6 * (1.0 + std::abs(pval)))});
        if (merit < best_merit) {
            best_merit = merit;
            best_rd_term = Rd.cwiseAbs().maxCoeff() / (1e-6 * cscale);
            best = RealSolution{X, y, pval, dval, gap, iter - 1};
            refine_tried = false;
        }

        const double mu = gap / n;

        try {
        // Nesterov-Todd scaling point W with W S W = X.
        RMat Sh = sym_power(S, 0.5);
        RMat Shi = sym_power(S, -0.5);
        RMat T = Sh * X * Sh;
        RMat Th = sym_power(T, 0.5);
        RMat W = Shi * Th * Shi;
        W = 0.5 * (W + W.transpose());
        RMat Wh = sym_power(W, 0.5);
        RMat Whi = sym_power(W, -0.5);
        RMat V = 0.5 * (Whi * X * Whi + Wh * S * Wh);
        V = 0.5 * (V + V.transpose());
        Eigen::SelfAdjointEigenSolver<RMat> vev(V);
        if (vev.info() != Eigen::Success) throw SolverError("sdp: eigensolver failed");
        const RMat& Qv = vev.eigenvectors();
        const RVec& lv = vev.eigenvalues();
        auto lyap_solve = [&](const RMat& r) {
            RMat rq = Qv.transpose() * r * Qv;
            for (Eigen::Index a2 = 0; a2 < rq.rows(); ++a2)
                for (Eigen::Index b2 = 0; b2 < rq.cols(); ++b2)
                    rq(a2, b2) *= 2.0 / std::max(lv(a2) + lv(b2), 1e-300);
            return RMat(Qv * rq * Qv.transpose());
        };

        RMat Sinv = sym_power(S, -1.0);
        std::vector<RMat> WAW(static_cast<std::size_t>(p));
        for (int i = 0; i < p; ++i) WAW[static_cast<std::size_t>(i)] = W * prob.A[i] * W;
        RMat schur(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = 0; j <= i; ++j) {
                schur(i, j) = frob(prob.A[i], WAW[static_cast<std::size_t>(j)]);
                schur(j, i) = schur(i, j);
            }
        Eigen::LDLT<RMat> sf(schur);
        if (sf.info() != Eigen::Success) {
            const double ridge = 1e-12 * std::max(1.0, schur.diagonal().cwiseAbs().maxCoeff());
            sf.compute(schur + ridge * RMat::Identity(p, p));
            if (sf.info() != Eigen::Success) throw SolverError("sdp: Schur factorization failed");
        }
        RMat WRdW = W * Rd * W;

        auto direction = [&](const RMat& G, RVec& dy, RMat& dS, RMat& dX) {
            RVec q(p);
            for (int i = 0; i < p; ++i) q(i) = frob(prob.A[i], G + WRdW);
            dy = sf.solve(q - rp);
            dS = -Rd;
            for (int i = 0; i < p; ++i) dS += dy(i) * prob.A[i];
            dX = G - W * dS * W;
            dX = 0.5 * (dX + dX.transpose());
            dS = 0.5 * (dS + dS.transpose());
        };

        // Predictor.
        RVec dy_a;
        RMat dS_a, dX_a;
        direction(-X, dy_a, dS_a, dX_a);
        const double ap_a = std::min(1.0, max_step(X, dX_a));
        const double ad_a = std::min(1.0, max_step(S, dS_a));
        const double gap_aff =
            std::max(0.0, frob(X + ap_a * dX_a, S + ad_a * dS_a));
        double sigma = std::pow(gap_aff / std::max(gap, 1e-300), 3.0);
        sigma = std::clamp(sigma, 1e-8, 1.0 - 1e-8);

        // Corrector.
        RMat dXh = Whi * dX_a * Whi;
        RMat dSh = Wh * dS_a * Wh;
        RMat cross = 0.5 * (dXh * dSh + dSh * dXh);
        RMat G = sigma * mu * Sinv - X - Wh * lyap_solve(cross) * Wh;
        G = 0.5 * (G + G.transpose());
        RVec dy;
        RMat dS, dX;
        direction(G, dy, dS, dX);
        if (!dX.allFinite() || !dS.allFinite() || !dy.allFinite())
            throw SolverError("sdp: direction not finite");

        const double ap = std::min(1.0, 0.98 * max_step(X, dX));
        const double ad = std::min(1.0, 0.98 * max_step(S, dS));
        // Steps collapse once double precision is exhausted near a
        // degenerate face; fall back on the best contract-level iterate,
        // repairing its equality residual first if that is all it misses.
        if (ap < 1e-2 && ad < 1e-2) {
            if (best_merit > 1.0 && !refine_tried) {
                refine_tried = true;
                best_merit = std::min(best_merit, refined_merit(best, best_rd_term));
            }
            if (best_merit <= 1.0) return best;
        }
        X += ap * dX;
        S += ad * dS;
        y += ad * dy;
        X = 0.5 * (X + X.transpose());
        S = 0.5 * (S + S.transpose());
        if (std::getenv("QUATGRO_SDP_TRACE")) {
            std::fprintf(stderr,
                         "it=%d gap=%.3e rp=%.3e rd=%.3e pval=%.6f dval=%.6f ap=%.3f ad=%.3f sig=%.2e\n",
                         iter, gap, rp.cwiseAbs().maxCoeff(), Rd.cwiseAbs().maxCoeff(), pval,
                         dval, ap, ad, sigma);
        }
        } catch (const SolverError&) {
            if (best_merit > 1.0)
                best_merit = std::min(best_merit, refined_merit(best, best_rd_term));
            if (best_merit <= 1.0) return best;
            throw;
        }
    }
    if (best_merit > 1.0)
        best_merit = std::min(best_merit, refined_merit(best, best_rd_term));
    if (best_merit <= 1.0) return best;
    throw SolverError("sdp: no convergence within 200 iterations");
}

}  // namespace

SdpSolution solve(const SdpProblem& problem, double tol) {
    const int d = problem.d;
    if (d <= 0) throw std::invalid_argument("sdp: dimension must be positive");
    if (problem.eq_mats.size() != problem.eq_rhs.size() ||
        problem.ineq_mats.size() != problem.ineq_rhs.size())
        throw std::invalid_argument("sdp: constraint list size mismatch");
    for (const CMat* m : {&problem.objective}) {
        if (m->rows() != d || m->cols() != d)
            throw std::invalid_argument("sdp: objective dimension mismatch");
    }
    const int q = static_cast<int>(problem.ineq_mats.size());
    const int n = 2 * d + q;  // real embedding plus one slack per inequality

    RealSdp rp;
    rp.n = n;
    rp.C = RMat::Zero(n, n);
    rp.C.topLeftCorner(2 * d, 2 * d) = 0.5 * emb_real(problem.objective);
    rp.b = RVec((int)problem.eq_rhs.size() + q);
    for (std::size_t i = 0; i < problem.eq_mats.size(); ++i) {
        RMat a = RMat::Zero(n, n);
        a.topLeftCorner(2 * d, 2 * d) = 0.5 * emb_real(problem.eq_mats[i]);
        rp.A.push_back(std::move(a));
        rp.b(static_cast<int>(i)) = problem.eq_rhs[i];
    }
    for (int j = 0; j < q; ++j) {
        RMat a = RMat::Zero(n, n);
        a.topLeftCorner(2 * d, 2 * d) = 0.5 * emb_real(problem.ineq_mats[static_cast<std::size_t>(j)]);
        a(2 * d + j, 2 * d + j) = 1.0;
        rp.A.push_back(std::move(a));
        rp.b(static_cast<int>(problem.eq_rhs.size()) + j) = problem.ineq_rhs[static_cast<std::size_t>(j)];
    }

    RealSolution rs = solve_real(rp, tol);
    SdpSolution out;
    out.X = emb_collapse(rs.X.topLeftCorner(2 * d, 2 * d));
    out.value = rs.value;
    out.dual_value = rs.dual_value;
    out.gap = rs.gap;
    out.iterations = rs.iterations;
    return out;
}

SelfAdjointQuatMatrix bipartite_self_adjoint(const QuatMatrix& m) {
    const std::size_t r = m.rows(), c = m.cols();
    QuatMatrix a(r + c, r + c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j) {
            a(i, r + j) = m(i, j);
            a(r + j, i) = m(i, j).conj();
        }
    return SelfAdjointQuatMatrix(std::move(a));
}

namespace {

CMat herm_basis_re(int d, int a, int b) {
    CMat m = CMat::Zero(d, d);
    if (a == b) {
        m(a, a) = 1.0;
    } else {
        m(a, b) = 0.5;
        m(b, a) = 0.5;
    }
    return m;
}

CMat herm_basis_im(int d, int a, int b) {
    CMat m = CMat::Zero(d, d);
    m(a, b) = Complex(0.0, 0.5);
    m(b, a) = Complex(0.0, -0.5);
    return m;
}

// Constraints carving the embedded-quaternion correlation structure out of
// the complex correlation matrices of size 2p: blocks [[Z,W],[-conj W, conj Z]]
// with W skew, plus a unit (or [0,1]) diagonal.
void add_structure_constraints(SdpProblem& sp, int p, bool unit_diagonal) {
    const int d = 2 * p;
    // conj-pairing of the two diagonal blocks: H(p+k,p+l) = conj(H(k,l)).
    for (int k = 0; k < p; ++k)
        for (int l = k; l < p; ++l) {
            if (k == l && unit_diagonal) continue;  // implied by the diagonal pins
            CMat re = herm_basis_re(d, p + k, p + l) - herm_basis_re(d, k, l);
            sp.eq_mats.push_back(std::move(re));
            sp.eq_rhs.push_back(0.0);
            if (k != l) {
                CMat im = herm_basis_im(d, p + k, p + l) + herm_basis_im(d, k, l);
                sp.eq_mats.push_back(std::move(im));
                sp.eq_rhs.push_back(0.0);
            }
        }
    // Skewness of the off-diagonal block: H(k,p+l) + H(l,p+k) = 0.
    for (int k = 0; k < p; ++k)
        for (int l = k; l < p; ++l) {
            CMat re = herm_basis_re(d, k, p + l);
            CMat im = herm_basis_im(d, k, p + l);
            if (l != k) {
                re += herm_basis_re(d, l, p + k);
                im += herm_basis_im(d, l, p + k);
            }
            sp.eq_mats.push_back(std::move(re));
            sp.eq_rhs.push_back(0.0);
            sp.eq_mats.push_back(std::move(im));
            sp.eq_rhs.push_back(0.0);
        }
    if (unit_diagonal) {
        for (int k = 0; k < d; ++k) {
            sp.eq_mats.push_back(herm_basis_re(d, k, k));
            sp.eq_rhs.push_back(1.0);
        }
    } else {
        for (int k = 0; k < p; ++k) {
            sp.ineq_mats.push_back(herm_basis_re(d, k, k));
            sp.ineq_rhs.push_back(1.0);
        }
    }
}

}  // namespace

GrothendieckSdpResult grothendieck_sdp_full(const QuatMatrix& m, double tol) {
    const int p = static_cast<int>(m.rows() + m.cols());
    SdpProblem sp;
    sp.d = 2 * p;
    // Conjugating the coefficient matrix orients the trace pairing so that
    // the optimum equals sum Re(m_ij <u_i, v_j>) over the collapsed Gram
    // matrix itself.  Collapsing without a further entrywise conjugation
    // matters: that map does not preserve positivity over the quaternions.
    sp.objective =
        0.25 * embed_hatC(bipartite_self_adjoint(m.conjugate()).mat());
    add_structure_constraints(sp, p, true);
    SdpSolution sol = solve(sp, tol);

    GrothendieckSdpResult out;
    out.value = sol.value;
    out.gap = sol.gap;
    out.iterations = sol.iterations;
    // A tiny ridge keeps the factorization downstream happy.
    QuatMatrix g = collapse_hatC(sol.X);
    constexpr double kRidge = 1e-7;
    g *= (1.0 - kRidge);
    for (std::size_t i = 0; i < g.rows(); ++i) g(i, i) += Quaternion(kRidge);
    out.gram = std::move(g);
    return out;
}

double grothendieck_sdp(const QuatMatrix& m) { return grothendieck_sdp_full(m).value; }

double grothendieck_sdp_complex(const CMat& b, double tol) {
    const int mm = static_cast<int>(b.rows()), nn = static_cast<int>(b.cols());
    const int d = mm + nn;
    SdpProblem sp;
    sp.d = d;
    CMat obj = CMat::Zero(d, d);
    obj.topRightCorner(mm, nn) = b;
    obj.bottomLeftCorner(nn, mm) = b.adjoint();
    sp.objective = 0.5 * obj;
    for (int k = 0; k < d; ++k) {
        sp.eq_mats.push_back(herm_basis_re(d, k, k));
        sp.eq_rhs.push_back(1.0);
    }
    return solve(sp, tol).value;
}

namespace {

double signed_correlation_sdp(const SelfAdjointQuatMatrix& a, bool unit_diagonal, double tol) {
    const int p = static_cast<int>(a.size());
    CMat c = 0.5 * embed_hatC(a.mat().conjugate());
    double best = 0.0;
    for (double s : {1.0, -1.0}) {
        SdpProblem sp;
        sp.d = 2 * p;
        sp.objective = s * c;
        add_structure_constraints(sp, p, unit_diagonal);
        best = std::max(best, solve(sp, tol).value);
    }
    return best;
}

}  // namespace

double gamma_sdp(const SelfAdjointQuatMatrix& a, double tol) {
    return signed_correlation_sdp(a, true, tol);
}

double Gamma_sdp(const SelfAdjointQuatMatrix& a, double tol) {
    return signed_correlation_sdp(a, false, tol);
}

QuatMatrix quat_from_real(const RMat& a) {
    QuatMatrix m(static_cast<std::size_t>(a.rows()), static_cast<std::size_t>(a.cols()));
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = Quaternion(a(i, j));
    return m;
}

NesterovReport nesterov_check(const RMat& a, int restarts, std::uint64_t seed, double tol) {
    SelfAdjointQuatMatrix qa(quat_from_real(a));
    NesterovReport rep;
    rep.sdp_value = gamma_sdp(qa);
    rep.ascent_lower = theta_lower(qa, restarts, seed).lower;
    rep.bound = 32.0 / (9.0 * 3.14159265358979323846);
    rep.ratio = rep.ascent_lower > 1e-12 ? rep.sdp_value / rep.ascent_lower
                                         : (rep.sdp_value <= 1e-12 ? 1.0 : 1e30);
    rep.within_bound = rep.ratio <= rep.bound + tol;
    return rep;
}

}  // namespace quatgro
