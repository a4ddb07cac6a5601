#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "quatgro/quatmat.hpp"
#include "quatgro/rng.hpp"

using namespace quatgro;

namespace {

Quaternion random_quat(Rng& rng) {
    return {rng.next_normal(), rng.next_normal(), rng.next_normal(),
            rng.next_normal()};
}

QuatVector random_vector(Rng& rng, std::size_t n) {
    QuatVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = random_quat(rng);
    return v;
}

QuatVector unit_vector(Rng& rng, std::size_t n) {
    QuatVector v = random_vector(rng, n);
    const double nv = norm(v);
    for (std::size_t i = 0; i < n; ++i) v[i] /= nv;
    return v;
}

QuatMatrix random_matrix(Rng& rng, std::size_t m, std::size_t n) {
    QuatMatrix a(m, n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j) a(i, j) = random_quat(rng);
    return a;
}

SelfAdjointQuatMatrix random_self_adjoint(Rng& rng, std::size_t n) {
    QuatMatrix g = random_matrix(rng, n, n);
    QuatMatrix a = g + g.adjoint();
    a *= 0.5;
    return SelfAdjointQuatMatrix(a);
}

SelfAdjointQuatMatrix random_psd(Rng& rng, std::size_t n) {
    QuatMatrix g = random_matrix(rng, n, n);
    return SelfAdjointQuatMatrix(g.adjoint() * g);
}

SelfAdjointQuatMatrix random_correlation(Rng& rng, std::size_t n) {
    QuatMatrix a = random_psd(rng, n).mat() + QuatMatrix::identity(n) * 0.1;
    QuatMatrix r(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            r(i, j) = a(i, j) / std::sqrt(a(i, i).real() * a(j, j).real());
    return SelfAdjointQuatMatrix(r);
}

QuatMatrix outer(const QuatVector& u, const QuatVector& v) {
    QuatMatrix m(u.size(), v.size());
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = u[i] * v[j].conj();
    return m;
}

QuatVector conj_vector(const QuatVector& x) {
    QuatVector y(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i].conj();
    return y;
}

double vec_abs_diff(const QuatVector& a, const QuatVector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        d = std::max(d, max_abs_diff(a[i], b[i]));
    return d;
}

}  // namespace

TEST_CASE("inner product basics") {
    QuatVector e1(2);
    e1[0] = Quaternion(1.0);
    CHECK(inner_product(e1, e1) == Quaternion(1.0));

    Rng rng(31);
    for (int t = 0; t < 1000; ++t) {
        const QuatVector x = random_vector(rng, 4);
        const QuatVector y = random_vector(rng, 4);
        const Quaternion ip = inner_product(x, y);
        const Quaternion ip_bar = inner_product(conj_vector(y), conj_vector(x));
        CHECK(std::abs(ip.real() - ip_bar.real()) <=
              1e-12 * (1.0 + norm(x) * norm(y)));
        CHECK(ip.norm() <= norm(x) * norm(y) + 1e-12);
        CHECK(max_abs_diff(inner_product(y, x), ip.conj()) <=
              1e-12 * (1.0 + ip.norm()));
    }
}

TEST_CASE("complex block embedding") {
    CHECK((embed_hatC(QuatMatrix::identity(3)) - CMat::Identity(6, 6))
              .cwiseAbs()
              .maxCoeff() == 0.0);

    Rng rng(32);
    for (int t = 0; t < 50; ++t) {
        const SelfAdjointQuatMatrix a = random_self_adjoint(rng, 4);
        const CMat h = embed_hatC(a.mat());
        const CMat z = h.topLeftCorner(4, 4);
        const CMat w = h.topRightCorner(4, 4);
        CHECK((z - z.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
        CHECK((w + w.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }

    for (int t = 0; t < 50; ++t) {
        const QuatMatrix m = random_matrix(rng, 3, 3);
        const QuatMatrix n = random_matrix(rng, 3, 3);
        const double scale = 1.0 + m.max_abs() * n.max_abs();
        CHECK((embed_hatC(m * n) - embed_hatC(m) * embed_hatC(n))
                  .cwiseAbs()
                  .maxCoeff() <= 1e-10 * scale);
        CHECK((embed_hatC(m.adjoint()) - embed_hatC(m).adjoint())
                  .cwiseAbs()
                  .maxCoeff() == 0.0);
        CHECK(max_abs_diff(collapse_hatC(embed_hatC(m)), m) == 0.0);
    }
}

TEST_CASE("embedding intertwines the vector action") {
    Rng rng(33);
    for (int t = 0; t < 100; ++t) {
        const QuatMatrix m = random_matrix(rng, 3, 4);
        const QuatVector x = random_vector(rng, 4);
        const CVec lhs = embed_hatC(m) * vtilde(x);
        const CVec rhs = vtilde(m * x);
        CHECK((lhs - rhs).cwiseAbs().maxCoeff() <=
              1e-11 * (1.0 + m.max_abs() * norm(x)));
        CHECK(vec_abs_diff(vtilde_inverse(vtilde(x)), x) == 0.0);
    }
}

TEST_CASE("spectral decomposition of self-adjoint matrices") {
    const QuatEig idspec =
        eig_self_adjoint(SelfAdjointQuatMatrix(QuatMatrix::identity(4)));
    for (double v : idspec.values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

    QuatMatrix f(2, 2);
    f(0, 1) = Quaternion::unit_j();
    f(1, 0) = -Quaternion::unit_j();
    const QuatEig fspec = eig_self_adjoint(SelfAdjointQuatMatrix(f));
    REQUIRE(fspec.values.size() == 2);
    CHECK(fspec.values[0] == doctest::Approx(-1.0).epsilon(1e-10));
    CHECK(fspec.values[1] == doctest::Approx(1.0).epsilon(1e-10));

    Rng rng(34);
    for (int t = 0; t < 25; ++t) {
        const SelfAdjointQuatMatrix a = random_self_adjoint(rng, 5);
        const QuatEig es = eig_self_adjoint(a);
        const QuatMatrix& u = es.vectors;
        CHECK(max_abs_diff(u.adjoint() * u, QuatMatrix::identity(5)) <= 1e-8);
        QuatMatrix d(5, 5);
        for (std::size_t i = 0; i < 5; ++i) d(i, i) = Quaternion(es.values[i]);
        CHECK(max_abs_diff(u * d * u.adjoint(), a.mat()) <= 1e-8);
    }
}

TEST_CASE("cone membership and square root") {
    const SelfAdjointQuatMatrix id(QuatMatrix::identity(3));
    CHECK(is_psd(id));
    CHECK(max_abs_diff(sqrt_psd(id).mat(), id.mat()) <= 1e-12);

    QuatMatrix ind(2, 2);
    ind(0, 0) = Quaternion(1.0);
    ind(1, 1) = Quaternion(-1.0);
    CHECK_FALSE(is_psd(SelfAdjointQuatMatrix(ind)));
    CHECK_THROWS_AS(sqrt_psd(SelfAdjointQuatMatrix(ind)), std::domain_error);

    // Entrywise conjugation keeps self-adjointness but reverses every
    // quaternion product, so it can destroy positivity.  The conjugation that
    // does preserve the cone is the *-congruence q -> j q j^{-1}, applied
    // entrywise via J = diag(j, ..., j).
    QuatMatrix jmat = QuatMatrix(4, 4);
    for (std::size_t i = 0; i < 4; ++i) jmat(i, i) = Quaternion::unit_j();

    Rng rng(35);
    for (int t = 0; t < 50; ++t) {
        const SelfAdjointQuatMatrix a = random_psd(rng, 4);
        CHECK(is_psd(a));
        const QuatMatrix c = a.mat().conjugate();
        CHECK(max_abs_diff(c.adjoint(), c) <= 1e-12);
        CHECK(is_psd(SelfAdjointQuatMatrix(jmat * a.mat() * jmat.adjoint())));
        const SelfAdjointQuatMatrix r = sqrt_psd(a);
        CHECK(max_abs_diff(r.mat() * r.mat(), a.mat()) <=
              1e-8 * (1.0 + a.mat().max_abs()));
    }

    // Witness that the entrywise conjugate of a PSD matrix can be indefinite:
    // for w = (1, i, j) the rank-one Gram ww* is PSD while w* conj(ww*) w = -3.
    QuatVector w(3);
    w[0] = Quaternion(1.0);
    w[1] = Quaternion::unit_i();
    w[2] = Quaternion::unit_j();
    const SelfAdjointQuatMatrix rank1(outer(w, w));
    CHECK(is_psd(rank1));
    const QuatMatrix rc = rank1.mat().conjugate();
    CHECK_FALSE(is_psd(SelfAdjointQuatMatrix(rc)));
    const Quaternion form = inner_product(w, rc * w);
    CHECK(std::abs(form.real() + 3.0) <= 1e-12);
    CHECK(std::abs(form.norm() - 3.0) <= 1e-12);
}

TEST_CASE("Gram factorization") {
    const auto basis = gram_vectors(SelfAdjointQuatMatrix(QuatMatrix::identity(3)));
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            CHECK(max_abs_diff(inner_product(basis[i], basis[j]),
                               Quaternion(i == j ? 1.0 : 0.0)) == 0.0);

    Rng rng(36);
    for (int t = 0; t < 40; ++t) {
        const SelfAdjointQuatMatrix a = random_correlation(rng, 5);
        const auto xs = gram_vectors(a);
        REQUIRE(xs.size() == 5);
        for (std::size_t i = 0; i < 5; ++i) {
            for (std::size_t j = 0; j < 5; ++j) {
                CHECK(max_abs_diff(inner_product(xs[i], xs[j]), a(i, j)) <= 1e-8);
            }
        }
    }

    // Rank one: only one Cholesky pivot fires, so every Gram vector lives on
    // a single coordinate.
    QuatVector v = random_vector(rng, 4);
    v[0] = Quaternion(1.0);
    const auto xs = gram_vectors(SelfAdjointQuatMatrix(outer(v, v)));
    int live_coords = 0;
    for (std::size_t c = 0; c < 4; ++c) {
        double col = 0.0;
        for (const auto& x : xs) col += x[c].norm2();
        if (col > 1e-20) ++live_coords;
    }
    CHECK(live_coords == 1);
}

TEST_CASE("Hadamard products preserve the cone") {
    const QuatMatrix id = QuatMatrix::identity(3);
    CHECK(max_abs_diff(hadamard(id, id), id) == 0.0);

    Rng rng(37);
    for (int t = 0; t < 200; ++t) {
        RMat gr = RMat::Zero(4, 4);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) gr(i, j) = rng.next_normal();
        const RMat sr = gr * gr.transpose();
        QuatMatrix a(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) a(i, j) = Quaternion(sr(i, j));

        const SelfAdjointQuatMatrix b = random_psd(rng, 4);
        CHECK(is_psd(SelfAdjointQuatMatrix(hadamard(a, b.mat()))));

        QuatMatrix l(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                l(i, j) = Quaternion(b(i, j).norm2());
        CHECK(is_psd(SelfAdjointQuatMatrix(l)));
    }
}

TEST_CASE("correlation powers stay correlation matrices") {
    Rng rng(38);
    const SelfAdjointQuatMatrix a0 = random_correlation(rng, 4);
    CHECK(max_abs_diff(correlation_power(a0, 0).mat(), a0.mat()) == 0.0);

    const SelfAdjointQuatMatrix id(QuatMatrix::identity(4));
    CHECK(max_abs_diff(correlation_power(id, 5).mat(), id.mat()) == 0.0);

    const SelfAdjointQuatMatrix a3 = correlation_power(a0, 3);
    CHECK(is_psd(a3));
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(max_abs_diff(a3(i, i), Quaternion(1.0)) <= 1e-12);
}

TEST_CASE("Gram-Schmidt orthonormalization") {
    std::vector<QuatVector> basis;
    for (std::size_t i = 0; i < 3; ++i) {
        QuatVector e(3);
        e[i] = Quaternion(1.0);
        basis.push_back(e);
    }
    const auto same = gram_schmidt(basis);
    REQUIRE(same.size() == 3);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(vec_abs_diff(same[i], basis[i]) <= 1e-12);

    Rng rng(39);
    const QuatVector x = unit_vector(rng, 3);
    const Quaternion q = rng.next_unit_quaternion();
    const auto dependent = gram_schmidt({x, x * q});
    CHECK(dependent.size() == 1);

    std::vector<QuatVector> five;
    for (int i = 0; i < 5; ++i) five.push_back(random_vector(rng, 3));
    const auto ortho = gram_schmidt(five);
    CHECK(ortho.size() == 3);
    for (std::size_t i = 0; i < ortho.size(); ++i)
        for (std::size_t j = 0; j < ortho.size(); ++j)
            CHECK(max_abs_diff(inner_product(ortho[i], ortho[j]),
                               Quaternion(i == j ? 1.0 : 0.0)) <= 1e-10);
}

TEST_CASE("row rank") {
    CHECK(rank(QuatMatrix::identity(6)) == 6);

    Rng rng(40);
    const QuatVector u = random_vector(rng, 4);
    const QuatVector v = random_vector(rng, 5);
    CHECK(rank(outer(u, v)) == 1);

    QuatMatrix m(4, 6);
    for (std::size_t j = 0; j < 6; ++j) {
        m(0, j) = random_quat(rng);
        m(1, j) = random_quat(rng);
        m(2, j) = random_quat(rng);
        m(3, j) = m(1, j);
    }
    CHECK(rank(m) == 3);
}

TEST_CASE("cone membership matches the complex embedding") {
    Rng rng(41);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_u64() % 7);
        const SelfAdjointQuatMatrix a =
            (t % 2 == 0) ? random_psd(rng, n) : random_self_adjoint(rng, n);
        const HermEig es = eig_hermitian(embed_hatC(a.mat()));
        const bool embedded_psd = es.values.minCoeff() >= -1e-9;
        CHECK(is_psd(a) == embedded_psd);
    }
}

TEST_CASE("tensor product identities") {
    Rng rng(42);
    for (int t = 0; t < 500; ++t) {
        const QuatVector u = random_vector(rng, 3);
        const QuatVector v = random_vector(rng, 2);
        const QuatVector y = random_vector(rng, 2);

        CHECK(std::abs(norm(kron(u, v)) - norm(u) * norm(v)) <=
              1e-10 * (1.0 + norm(u) * norm(v)));

        // The scalar that survives on the right pairs the conjugated copies:
        // factors pass through the two tensor slots in opposite orders, so
        // pairing v against y directly picks up the reversed product instead.
        const Quaternion vy = inner_product(conj_vector(v), conj_vector(y));
        const double lhs =
            inner_product(kron(conj_vector(v), v), kron(conj_vector(y), y))
                .real();
        CHECK(std::abs(lhs - vy.norm2()) <= 1e-10 * (1.0 + vy.norm2()));

        // Right-scale x so that <u,x> is real; the product rule then splits.
        QuatVector x = random_vector(rng, 3);
        const Quaternion ux = inner_product(u, x);
        if (ux.norm() > 1e-8) x = x * (ux.conj() / ux.norm());
        const Quaternion lhs2 = inner_product(kron(u, v), kron(x, y));
        const Quaternion rhs2 = inner_product(u, x) * inner_product(v, y);
        CHECK(max_abs_diff(lhs2, rhs2) <= 1e-10 * (1.0 + rhs2.norm()));
    }
}

TEST_CASE("rank doubles under the embedding") {
    Rng rng(43);
    for (int t = 0; t < 50; ++t) {
        const std::size_t m = 3 + static_cast<std::size_t>(rng.next_u64() % 3);
        const std::size_t n = 3 + static_cast<std::size_t>(rng.next_u64() % 3);
        const int r = 1 + static_cast<int>(rng.next_u64() %
                                           static_cast<std::uint64_t>(
                                               std::min(m, n)));
        QuatMatrix a(m, n);
        for (int s = 0; s < r; ++s)
            a += outer(random_vector(rng, m), random_vector(rng, n));
        CHECK(rank(a) == r);
        CHECK(2 * rank(a) == numerical_rank(embed_hatC(a)));
    }
}
