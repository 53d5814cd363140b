#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "chns/kernels.hpp"

using namespace chns;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    std::vector<double> v(n);
    for (auto& x : v) x = unif(rng);
    return v;
}

}  // namespace

TEST_CASE("elementwise ops on hand-checked inputs") {
    const kern::Ops& K = kern::scalar_ops;
    double a[3] = {1, 2, 3}, b[3] = {4, 5, 6}, out[3];

    K.mul(out, a, b, 3);
    CHECK(out[0] == 4.0);
    CHECK(out[1] == 10.0);
    CHECK(out[2] == 18.0);

    double acc[3] = {1, 1, 1};
    K.fmadd(acc, a, b, 3);
    CHECK(acc[0] == 5.0);
    CHECK(acc[2] == 19.0);

    double acc2[3] = {100, 100, 100};
    K.fnmadd(acc2, a, b, 3);
    CHECK(acc2[0] == 96.0);
    CHECK(acc2[1] == 90.0);
    CHECK(acc2[2] == 82.0);

    K.scale(out, a, -2.0, 3);
    CHECK(out[1] == -4.0);

    CHECK(K.sum(a, 3) == 6.0);
    CHECK(K.dot(a, b, 3) == 32.0);
    double c[4] = {1, -7, 3, 5};
    CHECK(K.max_abs(c, 4) == 7.0);
}

TEST_CASE("lincomb matches a plain accumulation") {
    const kern::Ops& K = kern::scalar_ops;
    auto v0 = random_vec(13, 1), v1 = random_vec(13, 2), v2 = random_vec(13, 3);
    const double* srcs[3] = {v0.data(), v1.data(), v2.data()};
    double coef[3] = {3.0, -3.0, 1.0};
    std::vector<double> out(13);
    K.lincomb(out.data(), coef, srcs, 3, 13);
    for (std::size_t i = 0; i < 13; ++i)
        CHECK(out[i] == doctest::Approx(3 * v0[i] - 3 * v1[i] + v2[i]).epsilon(1e-14));
}

TEST_CASE("double well and its derivative at reference points") {
    const kern::Ops& K = kern::scalar_ops;
    double phi[4] = {0.0, 1.0, -1.0, 0.5};
    double out[4];

    // (1 - p^2)^2 * c with c = 1/(4 eps^2), eps = 1 -> c = 0.25
    K.double_well(out, phi, 0.25, 4);
    CHECK(out[0] == doctest::Approx(0.25));
    CHECK(out[1] == doctest::Approx(0.0));
    CHECK(out[2] == doctest::Approx(0.0));
    CHECK(out[3] == doctest::Approx(0.25 * 0.5625));

    // (p^3 - p)/eps^2 - gamma p, eps = 1, gamma = 2
    K.well_prime(out, phi, 1.0, 2.0, 4);
    CHECK(out[0] == doctest::Approx(0.0));
    CHECK(out[1] == doctest::Approx(-2.0));
    CHECK(out[2] == doctest::Approx(2.0));
    CHECK(out[3] == doctest::Approx(0.125 - 0.5 - 1.0));
}

TEST_CASE("scalar and AVX2 backends agree on awkward lengths") {
    if (!kern::avx2_available()) {
        MESSAGE("AVX2 not available on this machine; skipping");
        return;
    }
    const kern::Ops& S = kern::scalar_ops;
    const kern::Ops& V = kern::avx2_ops;
    for (std::size_t n : {1ul, 3ul, 4ul, 7ul, 64ul, 1001ul}) {
        auto a = random_vec(n, 10 + n), b = random_vec(n, 20 + n);
        std::vector<double> s(n), v(n);

        S.mul(s.data(), a.data(), b.data(), n);
        V.mul(v.data(), a.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i) CHECK(s[i] == v[i]);

        std::vector<double> sa = a, va = a;
        S.fmadd(sa.data(), b.data(), b.data(), n);
        V.fmadd(va.data(), b.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(sa[i] == doctest::Approx(va[i]).epsilon(1e-15));

        sa = a; va = a;
        S.fnmadd(sa.data(), b.data(), b.data(), n);
        V.fnmadd(va.data(), b.data(), b.data(), n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(sa[i] == doctest::Approx(va[i]).epsilon(1e-15));

        S.scale(s.data(), a.data(), 1.7, n);
        V.scale(v.data(), a.data(), 1.7, n);
        for (std::size_t i = 0; i < n; ++i) CHECK(s[i] == v[i]);

        S.double_well(s.data(), a.data(), 0.3, n);
        V.double_well(v.data(), a.data(), 0.3, n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(s[i] == doctest::Approx(v[i]).epsilon(1e-14));

        S.well_prime(s.data(), a.data(), 2.5, 0.7, n);
        V.well_prime(v.data(), a.data(), 2.5, 0.7, n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(s[i] == doctest::Approx(v[i]).epsilon(1e-14));

        auto c0 = random_vec(n, 30 + n), c1 = random_vec(n, 40 + n);
        const double* srcs[2] = {c0.data(), c1.data()};
        double coef[2] = {2.0, -1.0};
        S.lincomb(s.data(), coef, srcs, 2, n);
        V.lincomb(v.data(), coef, srcs, 2, n);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(s[i] == doctest::Approx(v[i]).epsilon(1e-14));

        CHECK(S.sum(a.data(), n) == doctest::Approx(V.sum(a.data(), n)).epsilon(1e-13));
        CHECK(S.dot(a.data(), b.data(), n) ==
              doctest::Approx(V.dot(a.data(), b.data(), n)).epsilon(1e-13));
        CHECK(S.max_abs(a.data(), n) == V.max_abs(a.data(), n));
    }
}

TEST_CASE("backend selection") {
    CHECK(kern::select_backend("scalar"));
    CHECK(std::string(kern::backend_name()) == "scalar");
    if (kern::avx2_available()) {
        CHECK(kern::select_backend("avx2"));
        CHECK(std::string(kern::backend_name()) == "avx2");
    } else {
        CHECK_FALSE(kern::select_backend("avx2"));
    }
    CHECK_FALSE(kern::select_backend("no-such-backend"));
}
