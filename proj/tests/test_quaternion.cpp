#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "quatgro/quaternion.hpp"
#include "quatgro/rng.hpp"

using namespace quatgro;

namespace {

Quaternion random_quat(Rng& rng) {
    return {rng.next_normal(), rng.next_normal(), rng.next_normal(),
            rng.next_normal()};
}

double c2_abs_diff(const std::array<std::array<Complex, 2>, 2>& a,
                   const std::array<std::array<Complex, 2>, 2>& b) {
    double d = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) d = std::max(d, std::abs(a[r][c] - b[r][c]));
    return d;
}

std::array<std::array<Complex, 2>, 2> c2_mul(
    const std::array<std::array<Complex, 2>, 2>& a,
    const std::array<std::array<Complex, 2>, 2>& b) {
    std::array<std::array<Complex, 2>, 2> r{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
    return r;
}

}  // namespace

TEST_CASE("unit product table") {
    const Quaternion one(1.0);
    const Quaternion i = Quaternion::unit_i();
    const Quaternion j = Quaternion::unit_j();
    const Quaternion k = Quaternion::unit_k();

    CHECK(i * i == -one);
    CHECK(j * j == -one);
    CHECK(k * k == -one);

    CHECK(i * j == k);
    CHECK(j * k == i);
    CHECK(k * i == j);
    CHECK(j * i == -k);
    CHECK(k * j == -i);
    CHECK(i * k == -j);

    CHECK((one + i) * (one + j) == Quaternion(1.0, 1.0, 1.0, 1.0));
}

TEST_CASE("conjugate, modulus and inverse") {
    const Quaternion a(1.0, 1.0, 1.0, 1.0);
    CHECK(a.conj() == Quaternion(1.0, -1.0, -1.0, -1.0));
    CHECK(a.norm2() == 4.0);
    CHECK(a.norm() == doctest::Approx(2.0).epsilon(1e-15));

    const Quaternion inv = a.inverse();
    CHECK(max_abs_diff(inv, Quaternion(0.25, -0.25, -0.25, -0.25)) == 0.0);
    CHECK(max_abs_diff(a * inv, Quaternion(1.0)) <= 1e-15);
    CHECK(max_abs_diff(inv * a, Quaternion(1.0)) <= 1e-15);

    CHECK_THROWS_AS(Quaternion().inverse(), std::domain_error);
}

TEST_CASE("sign function and its conventions") {
    CHECK(sign_quat({0.0, 3.0, 0.0, 0.0}, SignConvention::zero_maps_to_zero) ==
          Quaternion::unit_i());
    CHECK(sign_quat({}, SignConvention::zero_maps_to_one) == Quaternion(1.0));
    CHECK(sign_quat({}, SignConvention::zero_maps_to_zero) == Quaternion());

    const double r = 1.0 / std::sqrt(2.0);
    const Quaternion s =
        sign_quat({1.0, 1.0, 0.0, 0.0}, SignConvention::zero_maps_to_one);
    CHECK(max_abs_diff(s, Quaternion(r, r, 0.0, 0.0)) <= 1e-15);
}

TEST_CASE("2x2 complex representation") {
    Rng rng(101);
    for (int t = 0; t < 300; ++t) {
        const Quaternion a = random_quat(rng);
        const Quaternion b = random_quat(rng);
        const auto ca = embed_c2(a);
        const auto cb = embed_c2(b);

        const Complex det = ca[0][0] * ca[1][1] - ca[0][1] * ca[1][0];
        CHECK(std::abs(det - Complex(a.norm2())) <= 1e-12 * (1.0 + a.norm2()));

        const Complex half_trace = 0.5 * (ca[0][0] + ca[1][1]);
        CHECK(std::abs(half_trace - Complex(a.real())) <= 1e-13);

        CHECK(c2_abs_diff(c2_mul(ca, cb), embed_c2(a * b)) <=
              1e-12 * (1.0 + a.norm() * b.norm()));
    }
}

TEST_CASE("4x4 real representation") {
    const auto id = embed_r4(Quaternion(1.0));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(id[r][c] == (r == c ? 1.0 : 0.0));

    // The image of a unit has entries in {0, +-1}, squares to -identity and
    // is antisymmetric, matching the 2x2 complex blocks written out in reals.
    const auto ri = embed_r4(Quaternion::unit_i());
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 4; ++c) {
            CHECK(std::abs(ri[r][c] * (1.0 - std::abs(ri[r][c]))) == 0.0);
            CHECK(ri[r][c] == -ri[c][r]);
            double sq = 0.0;
            for (int s = 0; s < 4; ++s) sq += ri[r][s] * ri[s][c];
            CHECK(sq == (r == c ? -1.0 : 0.0));
        }
    }

    Rng rng(202);
    for (int t = 0; t < 200; ++t) {
        const Quaternion a = random_quat(rng);
        const Quaternion b = random_quat(rng);
        const auto ra = embed_r4(a);
        const auto rb = embed_r4(b);
        const auto rab = embed_r4(a * b);
        for (int r = 0; r < 4; ++r) {
            for (int c = 0; c < 4; ++c) {
                double prod = 0.0;
                for (int s = 0; s < 4; ++s) prod += ra[r][s] * rb[s][c];
                CHECK(std::abs(prod - rab[r][c]) <=
                      1e-12 * (1.0 + a.norm() * b.norm()));
            }
        }
    }
}

TEST_CASE("algebra identities on random pairs") {
    Rng rng(7);
    for (int t = 0; t < 1000; ++t) {
        const Quaternion a = random_quat(rng);
        const Quaternion b = random_quat(rng);
        const Quaternion c = random_quat(rng);
        const double scale = 1.0 + a.norm() * b.norm() * (1.0 + c.norm());

        CHECK(max_abs_diff((a * b) * c, a * (b * c)) <= 1e-12 * scale);
        CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) <= 1e-12 * scale);
        CHECK(max_abs_diff((a * b).conj(), b.conj() * a.conj()) <= 1e-12 * scale);

        const double re_ab = (a * b).real();
        CHECK(std::abs(re_ab - (b * a).real()) <= 1e-12 * scale);
        CHECK(std::abs(re_ab - (a.conj() * b.conj()).real()) <= 1e-12 * scale);
    }
}

TEST_CASE("sign is scale invariant and unit modulus") {
    Rng rng(9);
    for (int t = 0; t < 1000; ++t) {
        const Quaternion a = random_quat(rng);
        if (a.norm() < 1e-8) continue;
        const double tpos = 0.01 + 10.0 * rng.next_double();
        const Quaternion sa = sign_quat(a, SignConvention::zero_maps_to_zero);
        const Quaternion sta =
            sign_quat(a * tpos, SignConvention::zero_maps_to_zero);
        CHECK(max_abs_diff(sa, sta) <= 1e-12);
        CHECK(std::abs(sa.norm() - 1.0) <= 1e-12);
    }
}
