#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "quatgro/norms.hpp"
#include "quatgro/quatmat.hpp"
#include "quatgro/rng.hpp"
#include "quatgro/sdp.hpp"

using namespace quatgro;

namespace {

constexpr double kPi = 3.14159265358979323846;

QuatMatrix random_matrix(Rng& rng, std::size_t m, std::size_t n) {
    QuatMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = rng.next_gaussian_quaternion(1.0);
    return a;
}

SelfAdjointQuatMatrix random_self_adjoint(Rng& rng, std::size_t n) {
    QuatMatrix g = random_matrix(rng, n, n);
    QuatMatrix s = g + g.adjoint();
    s *= 0.5;
    return SelfAdjointQuatMatrix(s);
}

QuatMatrix chsh() {
    QuatMatrix m(2, 2);
    m(0, 0) = Quaternion(1.0);
    m(0, 1) = Quaternion(1.0);
    m(1, 0) = Quaternion(1.0);
    m(1, 1) = Quaternion(-1.0);
    return m;
}

// Applies z + wj -> conj(z) + conj(w) j entrywise.  Unlike full entrywise
// conjugation this is multiplicative, so it preserves Gram structure.
QuatMatrix half_conj(const QuatMatrix& a) {
    QuatMatrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Quaternion& q = a(i, j);
            out(i, j) = Quaternion(q.a0, -q.a1, q.a2, -q.a3);
        }
    return out;
}

// sum_ij Re(m_ij <u_i, v_j>) read off a concatenated Gram matrix.
double gram_pairing(const QuatMatrix& m, const QuatMatrix& gram) {
    const std::size_t r = m.rows();
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            s += (m(i, j) * gram(i, r + j)).real();
    return s;
}

void pin_diagonal(SdpProblem& sp) {
    for (int k = 0; k < sp.d; ++k) {
        CMat e = CMat::Zero(sp.d, sp.d);
        e(k, k) = 1.0;
        sp.eq_mats.push_back(std::move(e));
        sp.eq_rhs.push_back(1.0);
    }
}

}  // namespace

TEST_CASE("interior point solve on pinned diagonals") {
    // Maximizing the trace with a unit diagonal leaves no freedom at all.
    SdpProblem sp;
    sp.d = 3;
    sp.objective = CMat::Identity(3, 3);
    pin_diagonal(sp);
    SdpSolution sol = solve(sp);
    CHECK(std::abs(sol.value - 3.0) <= 1e-7);
    CHECK(std::abs(sol.dual_value - 3.0) <= 1e-6);
    CHECK(sol.gap <= 1e-6 * 4.0);
    CHECK(sol.value <= sol.dual_value + sol.gap + 1e-9);
    for (int k = 0; k < 3; ++k) CHECK(std::abs(sol.X(k, k).real() - 1.0) <= 1e-7);

    // Off-diagonal coupling pushes the optimum to the all-ones matrix.
    SdpProblem sq;
    sq.d = 2;
    sq.objective = CMat::Zero(2, 2);
    sq.objective(0, 1) = 1.0;
    sq.objective(1, 0) = 1.0;
    pin_diagonal(sq);
    SdpSolution s2 = solve(sq);
    CHECK(std::abs(s2.value - 2.0) <= 1e-6);
    CHECK(std::abs(s2.X(0, 1) - Complex(1.0, 0.0)) <= 1e-4);
}

TEST_CASE("pinned two by two optima match the closed form") {
    // With a unit diagonal the only freedom is the off-diagonal entry z,
    // |z| <= 1, and tr(C X) = c00 + c11 + 2 Re(c01 conj(z)).
    Rng rng(71);
    for (int t = 0; t < 10; ++t) {
        CMat c = CMat::Zero(2, 2);
        c(0, 0) = rng.next_normal();
        c(1, 1) = rng.next_normal();
        Complex off(rng.next_normal(), rng.next_normal());
        c(0, 1) = off;
        c(1, 0) = std::conj(off);
        SdpProblem sp;
        sp.d = 2;
        sp.objective = c;
        pin_diagonal(sp);
        SdpSolution sol = solve(sp);
        const double expect = c(0, 0).real() + c(1, 1).real() + 2.0 * std::abs(off);
        CHECK(std::abs(sol.value - expect) <= 1e-6 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("boxed diagonals keep only the positive part") {
    // Relaxing diag(X) = 1 to diag(X) <= 1 lets negative coefficients
    // retire their coordinate, so a diagonal objective collects only its
    // positive entries.
    Rng rng(72);
    for (int t = 0; t < 8; ++t) {
        const int d = 2 + t % 2;
        SdpProblem sp;
        sp.d = d;
        sp.objective = CMat::Zero(d, d);
        double expect = 0.0;
        for (int k = 0; k < d; ++k) {
            const double w = rng.next_normal();
            sp.objective(k, k) = w;
            expect += std::max(w, 0.0);
            CMat e = CMat::Zero(d, d);
            e(k, k) = 1.0;
            sp.ineq_mats.push_back(std::move(e));
            sp.ineq_rhs.push_back(1.0);
        }
        SdpSolution sol = solve(sp);
        CHECK(std::abs(sol.value - expect) <= 1e-6 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("solve rejects malformed problems") {
    SdpProblem sp;
    sp.d = 0;
    sp.objective = CMat::Zero(0, 0);
    CHECK_THROWS_AS(solve(sp), std::invalid_argument);

    sp.d = 2;
    sp.objective = CMat::Zero(3, 3);
    CHECK_THROWS_AS(solve(sp), std::invalid_argument);

    sp.objective = CMat::Zero(2, 2);
    sp.eq_mats.push_back(CMat::Identity(2, 2));
    CHECK_THROWS_AS(solve(sp), std::invalid_argument);
}

TEST_CASE("bipartite embedding is self-adjoint with the data in one corner") {
    Rng rng(73);
    QuatMatrix m = random_matrix(rng, 2, 3);
    SelfAdjointQuatMatrix a = bipartite_self_adjoint(m);
    REQUIRE(a.size() == 5);
    CHECK(max_abs_diff(a.mat().adjoint(), a.mat()) <= 1e-15);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(max_abs_diff(a.mat()(i, 2 + j), m(i, j)) <= 1e-15);
        }
        for (std::size_t j = 0; j < 2; ++j) CHECK(a.mat()(i, j).norm() <= 1e-15);
    }
}

TEST_CASE("scalar matrices reach their modulus") {
    Rng rng(74);
    for (int t = 0; t < 8; ++t) {
        QuatMatrix m(1, 1);
        m(0, 0) = rng.next_gaussian_quaternion(1.0);
        const double v = grothendieck_sdp(m);
        CHECK(std::abs(v - m(0, 0).norm()) <= 1e-6 * (1.0 + v));
    }
}

TEST_CASE("CHSH relaxation value") {
    GrothendieckSdpResult res = grothendieck_sdp_full(chsh());
    CHECK(std::abs(res.value - 2.0 * std::sqrt(2.0)) <= 1e-6);
    CHECK(res.gap <= 1e-6 * (1.0 + res.value));
    CHECK(std::abs(gram_pairing(chsh(), res.gram) - res.value) <= 1e-5);
}

TEST_CASE("relaxation dominates the scalar ascent") {
    Rng rng(75);
    for (int t = 0; t < 40; ++t) {
        QuatMatrix m = random_matrix(rng, 2, 2);
        const double sdp = grothendieck_sdp(m);
        const double lower = inf1_lower(m, 8, 75 + static_cast<std::uint64_t>(t)).lower;
        CHECK(lower <= sdp + 1e-5 * (1.0 + std::abs(sdp)));
    }
}

TEST_CASE("the maximizer is an honest correlation matrix") {
    Rng rng(76);
    std::vector<QuatMatrix> cases;
    cases.push_back(chsh());
    cases.push_back(random_matrix(rng, 2, 2));
    cases.push_back(random_matrix(rng, 2, 3));
    cases.push_back(random_matrix(rng, 3, 3));
    for (const QuatMatrix& m : cases) {
        GrothendieckSdpResult res = grothendieck_sdp_full(m);
        const std::size_t p = m.rows() + m.cols();
        REQUIRE(res.gram.rows() == p);
        CHECK(max_abs_diff(res.gram.adjoint(), res.gram) <= 1e-7);
        CHECK(is_psd(SelfAdjointQuatMatrix(res.gram)));
        for (std::size_t k = 0; k < p; ++k)
            CHECK(std::abs(res.gram(k, k).real() - 1.0) <= 1e-6);
        CHECK(std::abs(gram_pairing(m, res.gram) - res.value) <=
              1e-5 * (1.0 + std::abs(res.value)));
    }
}

TEST_CASE("value is invariant under the multiplicative conjugations") {
    // Entrywise quaternion conjugation is not one of them: it can move the
    // value by percents.  The two honest symmetries are the adjoint and the
    // componentwise map z + wj -> conj(z) + conj(w) j.
    Rng rng(77);
    for (int t = 0; t < 4; ++t) {
        QuatMatrix m = random_matrix(rng, 2, 2);
        const double base = grothendieck_sdp(m);
        const double tol = 1e-5 * (1.0 + std::abs(base));
        CHECK(std::abs(grothendieck_sdp(half_conj(m)) - base) <= tol);
        CHECK(std::abs(grothendieck_sdp(m.adjoint()) - base) <= tol);
    }
}

TEST_CASE("correlation norm of small explicit matrices") {
    QuatMatrix id2(2, 2);
    id2(0, 0) = Quaternion(1.0);
    id2(1, 1) = Quaternion(1.0);
    CHECK(std::abs(gamma_sdp(SelfAdjointQuatMatrix(id2)) - 2.0) <= 1e-6);

    QuatMatrix pm(2, 2);
    pm(0, 0) = Quaternion(1.0);
    pm(1, 1) = Quaternion(-1.0);
    CHECK(std::abs(gamma_sdp(SelfAdjointQuatMatrix(pm))) <= 1e-6);
    // Freeing the diagonal lets the negative coordinate drop out.
    CHECK(std::abs(Gamma_sdp(SelfAdjointQuatMatrix(pm)) - 1.0) <= 1e-6);

    // For [[c0, q], [conj q, c1]] with a pinned diagonal the optimum is
    // |c0 + c1| + 2|q|: the diagonal contributes a fixed sum and the
    // off-diagonal aligns with q.
    Rng rng(78);
    for (int t = 0; t < 6; ++t) {
        QuatMatrix a(2, 2);
        const double c0 = rng.next_normal();
        const double c1 = rng.next_normal();
        const Quaternion q = rng.next_gaussian_quaternion(1.0);
        a(0, 0) = Quaternion(c0);
        a(1, 1) = Quaternion(c1);
        a(0, 1) = q;
        a(1, 0) = q.conj();
        const double expect = std::abs(c0 + c1) + 2.0 * q.norm();
        const double got = gamma_sdp(SelfAdjointQuatMatrix(a));
        CHECK(std::abs(got - expect) <= 1e-6 * (1.0 + expect));
    }
}

TEST_CASE("correlation norms against the scalar bound") {
    // The symmetric problem obeys the same kind of rounding bound with
    // constant 64/(9 pi) - 1.
    const double kgam = 64.0 / (9.0 * kPi) - 1.0;
    Rng rng(79);
    for (int t = 0; t < 4; ++t) {
        SelfAdjointQuatMatrix a = random_self_adjoint(rng, 3);
        const double gam = gamma_sdp(a);
        const double theta = theta_lower(a, 32, 79 + static_cast<std::uint64_t>(t)).lower;
        CHECK(gam <= kgam * theta + 1e-2 * (1.0 + gam));
        CHECK(theta <= gam + 1e-5 * (1.0 + gam));
    }
}

TEST_CASE("positive semidefinite data collapses the two relaxations") {
    // For real PSD input the bipartite and the symmetric correlation
    // programs have the same value.
    Rng rng(80);
    for (int t = 0; t < 5; ++t) {
        RMat g(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) g(i, j) = rng.next_normal();
        RMat a = g * g.transpose();
        const double gam = gamma_sdp(SelfAdjointQuatMatrix(quat_from_real(a)));
        const double gro = grothendieck_sdp(quat_from_real(a));
        CHECK(std::abs(gam - gro) <= 1e-6 * (1.0 + std::abs(gam)));
    }
}

TEST_CASE("rounding ratio certification on PSD instances") {
    NesterovReport id = nesterov_check(RMat::Identity(3, 3));
    CHECK(std::abs(id.bound - 32.0 / (9.0 * kPi)) <= 1e-12);
    CHECK(std::abs(id.sdp_value - 3.0) <= 1e-5);
    CHECK(std::abs(id.ratio - 1.0) <= 1e-5);
    CHECK(id.within_bound);

    NesterovReport ones = nesterov_check(RMat::Ones(3, 3));
    CHECK(std::abs(ones.sdp_value - 9.0) <= 1e-4);
    CHECK(std::abs(ones.ascent_lower - 9.0) <= 1e-8);
    CHECK(std::abs(ones.ratio - 1.0) <= 1e-4);

    Rng rng(81);
    for (int t = 0; t < 10; ++t) {
        RMat g(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = rng.next_normal();
        RMat a = g * g.transpose();
        NesterovReport rep = nesterov_check(a, 64, 81 + static_cast<std::uint64_t>(t), 1e-3);
        CHECK(rep.within_bound);
        CHECK(rep.ratio <= 32.0 / (9.0 * kPi) + 1e-3);
        CHECK(rep.sdp_value >= rep.ascent_lower - 1e-5 * (1.0 + rep.sdp_value));
    }
}

TEST_CASE("complex relaxation agrees on real data and sits below the quaternion one") {
    CMat b(2, 2);
    b << 1.0, 1.0, 1.0, -1.0;
    CHECK(std::abs(grothendieck_sdp_complex(b) - 2.0 * std::sqrt(2.0)) <= 1e-6);

    CMat one(1, 1);
    one(0, 0) = Complex(0.0, 2.0);
    CHECK(std::abs(grothendieck_sdp_complex(one) - 2.0) <= 1e-6);

    // Quaternion correlations only widen the feasible set.
    Rng rng(82);
    for (int t = 0; t < 5; ++t) {
        RMat r(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r(i, j) = rng.next_normal();
        const double cx = grothendieck_sdp_complex(r.cast<Complex>());
        const double qt = grothendieck_sdp(quat_from_real(r));
        CHECK(cx <= qt + 1e-5 * (1.0 + qt));
    }
}

TEST_CASE("empty input is rejected") {
    QuatMatrix empty(0, 0);
    CHECK_THROWS_AS(grothendieck_sdp(empty), std::invalid_argument);
}
