#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/discrepancy.hpp"
#include "charsum/errors.hpp"
#include "charsum/exp_sums.hpp"
#include "charsum/finite_field.hpp"
#include "doctest.h"

using namespace charsum;

TEST_CASE("frozen small-field values") {
    FieldTable f3(3);
    CharTable c3(f3);
    // Quadratic Gauss sum over F_3 is i*sqrt(3).
    cplx g = gauss_naive(c3, 1);
    CHECK(std::abs(g - cplx(0.0, std::sqrt(3.0))) < 1e-12);

    FieldTable f5(5);
    CharTable c5(f5);
    cplx j = jacobi_via_gauss(c5, {1, 1});
    CHECK(std::abs(j - cplx(-1.0, -2.0)) < 1e-12);
    CHECK(std::abs(jacobi_direct(c5, {1, 1}) - cplx(-1.0, -2.0)) < 1e-12);
}

TEST_CASE("tabulated gauss sums match the naive sum") {
    for (std::int64_t q : {7, 9, 25}) {
        FieldTable f(q);
        CharTable chars(f);
        std::vector<cplx> all = gauss_all(chars);
        REQUIRE(static_cast<std::int64_t>(all.size()) == q - 1);
        for (std::int64_t j = 0; j < q - 1; ++j)
            CHECK(std::abs(all[j] - gauss_naive(chars, j)) < 1e-11);
        // Trivial character: sum over units of psi is -1.
        CHECK(std::abs(all[0] - cplx(-1.0, 0.0)) < 1e-12);
        // Nontrivial characters sit on the circle of radius sqrt(q).
        for (std::int64_t j = 1; j < q - 1; ++j)
            CHECK(std::abs(std::abs(all[j]) - std::sqrt(static_cast<double>(q))) < 1e-10);
    }
}

TEST_CASE("kloosterman sums from the multiplicative convolution") {
    FieldTable f(7);
    CharTable chars(f);
    std::vector<cplx> kl = kloosterman_all(chars, 2);
    REQUIRE(kl.size() == 6);
    // Independent derivation: Kl_2(a) = sum over units x of psi(x + a/x).
    for (std::int64_t t = 0; t < 6; ++t) {
        felem a = static_cast<felem>(t);
        cplx direct = 0;
        for (felem x = 0; x < 6; ++x) direct += chars.psi(f.add(x, f.mul(a, f.inv(x))));
        CHECK(std::abs(kl[t] - direct) < 1e-11);
        CHECK(std::abs(kl[t] - kloosterman_direct(chars, 2, a)) < 1e-11);
        CHECK(std::abs(kl[t].imag()) < 1e-11);  // Kl_2 is real
    }
}

TEST_CASE("kloosterman sums over a resolve to a sign") {
    FieldTable f(11);
    CharTable chars(f);
    for (int n = 1; n <= 4; ++n) {
        std::vector<cplx> kl = kloosterman_all(chars, n);
        cplx total = 0;
        for (const cplx& v : kl) total += v;
        double want = (n % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(total - cplx(want, 0.0)) < 1e-9);
    }
}

TEST_CASE("kloosterman purity bound") {
    FieldTable f(13);
    CharTable chars(f);
    for (int n = 1; n <= 4; ++n) {
        double cap = n * std::pow(13.0, (n - 1) / 2.0) * (1 + 1e-12) + 1e-9;
        for (const cplx& v : kloosterman_all(chars, n)) CHECK(std::abs(v) <= cap);
    }
}

TEST_CASE("exponential sum domain errors") {
    FieldTable f(7);
    CharTable chars(f);
    CHECK_THROWS_AS(kloosterman_direct(chars, 2, f.zero()), ZeroArgument);
    CHECK_THROWS_AS(kloosterman_direct(chars, 0, f.one()), DomainError);
    // The Gauss-sum route needs every character and the product nontrivial;
    // the direct enumeration stays defined for any tuple.
    CHECK_THROWS_AS(jacobi_via_gauss(chars, {0, 1}), ProductTrivial);
    CHECK_THROWS_AS(jacobi_via_gauss(chars, {2, 4}), ProductTrivial);
    CHECK_THROWS_AS(jacobi_direct(chars, {1}), DomainError);
    // Literal enumeration with a trivial slot: J(1, chi) = -1 for nontrivial chi.
    CHECK(std::abs(jacobi_direct(chars, {0, 2}) - cplx(-1.0, 0.0)) < 1e-10);
}

TEST_CASE("jacobi sums by enumeration of a1 + a2 = 1") {
    FieldTable f(7);
    CharTable chars(f);
    for (std::int64_t j1 = 1; j1 <= 5; ++j1) {
        for (std::int64_t j2 = 1; j2 <= 5; ++j2) {
            if ((j1 + j2) % 6 == 0) continue;
            cplx direct = 0;
            for (felem a1 = 0; a1 < 6; ++a1) {
                felem a2 = f.sub(f.one(), a1);
                if (a2 == f.zero()) continue;
                direct += chars.chi(j1, a1) * chars.chi(j2, a2);
            }
            CHECK(std::abs(jacobi_direct(chars, {j1, j2}) - direct) < 1e-11);
            CHECK(std::abs(jacobi_via_gauss(chars, {j1, j2}) - direct) < 1e-10);
        }
    }
}

TEST_CASE("angle families") {
    FieldTable f(7);
    CharTable chars(f);
    std::vector<cplx> gauss = gauss_all(chars);
    std::vector<std::int64_t> full{1, 2, 3, 4, 5};
    std::vector<double> angles = jacobi_angles(chars, gauss, {full, full}, 1000);
    CHECK(angles.size() == 20);  // 25 pairs minus 5 with trivial product
    for (double a : angles) {
        CHECK(a >= 0.0);
        CHECK(a < 1.0);
    }

    // The same multiset must come from normalizing each Jacobi sum by sqrt(q).
    std::vector<double> expect;
    for (std::int64_t j1 = 1; j1 <= 5; ++j1)
        for (std::int64_t j2 = 1; j2 <= 5; ++j2) {
            if ((j1 + j2) % 6 == 0) continue;
            expect.push_back(angle_of(jacobi_via_gauss(chars, {j1, j2}) / std::sqrt(7.0)));
        }
    std::vector<double> got = angles;
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    REQUIRE(got.size() == expect.size());
    for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-10));

    CHECK_THROWS_AS(jacobi_angles(chars, gauss, {full, full}, 19), TupleBudgetExceeded);
}
