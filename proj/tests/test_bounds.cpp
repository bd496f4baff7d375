#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "charsum/bounds.hpp"
#include "charsum/errors.hpp"
#include "charsum/invariant_dims.hpp"
#include "doctest.h"

using namespace charsum;

namespace {

doctest::Approx near(double v) { return doctest::Approx(v).epsilon(1e-12); }

} // namespace

TEST_CASE("kloosterman power sum bounds by hand") {
    // n = 2, k = l = 3, R = 5: swan count floor((2^6 - 5)/2) = 29.
    KlPowerBounds b = lemma_kl_rhs(7, 2, 3, 3, bigint(5));
    double q35 = std::pow(7.0, 3.5);
    CHECK(b.untwisted == near(5.0 * std::pow(7.0, 4.0) + (29.0 + 5.0) * q35));
    CHECK(b.twisted == near(29.0 * q35));

    // n = 1 collapses the q powers to q and sqrt(q).
    KlPowerBounds c = lemma_kl_rhs(7, 1, 2, 2, bigint(1));
    CHECK(c.untwisted == near(7.0 + std::sqrt(7.0)));
    CHECK(c.twisted == near(0.0));
}

TEST_CASE("two subset discrepancy bound") {
    auto hand = [](double q, double A1, double A2) {
        double first = (2.0 * std::pow(6.0, 2.0 / 3.0) * std::pow(A1, -1.0 / 3.0) *
                            std::pow(q, 1.0 / 6.0) +
                        std::pow(A1 * A2, -0.5) * std::sqrt(q) * std::log(q) / 2.0) *
                       (1.0 + 1.0 / (100.0 * std::sqrt(q)));
        double second = 4.5 * std::pow(A1, -2.0 / 7.0) * std::pow(A2, -1.0 / 7.0) *
                            std::pow(q, 3.0 / 14.0) +
                        1.1 * std::pow(A1, -0.5) * std::pow(A2, -0.25) * std::sqrt(q) *
                            std::log(q);
        return std::min(first, second);
    };
    CHECK(rhs_theorem1(101, 99, 99) == near(hand(101, 99, 99)));
    CHECK(rhs_theorem1(997, 31, 500) ==
          near(std::min(hand(997, 31, 500), hand(997, 500, 31))));
    CHECK(rhs_theorem1(997, 31, 500) == rhs_theorem1(997, 500, 31));
}

TEST_CASE("unconstrained slot discrepancy bounds") {
    // k = 1 keeps an explicit additive form with a subset term only for m > 1.
    auto hand_k1 = [](double q, double A1, int m) {
        double d = (m > 1) ? 1.0 : 0.0;
        return (2.0 * std::sqrt(3.0) * std::pow(q, -0.25) +
                0.75 * d / A1 * (2.0 + std::log(q))) *
               (1.0 + 2.0 / std::sqrt(q));
    };
    CHECK(rhs_theorem2(101, 1, 25, 1) == near(hand_k1(101, 25, 1)));
    CHECK(rhs_theorem2(101, 1, 25, 3) == near(hand_k1(101, 25, 3)));
    CHECK(rhs_theorem2(101, 1, 25, 1) < rhs_theorem2(101, 1, 25, 2));

    auto hand_k2 = [](double q, double k, double A1) {
        double fact = 1.0;
        for (double i = 2.0; i <= k + 1.0; ++i) fact *= i;
        double oddfact = 1.0;
        for (double i = 3.0; i <= 2.0 * k + 1.0; i += 2.0) oddfact *= i;
        double first = 3.0 * std::pow(q, -k / (2.0 * (k + 1.0))) *
                       (1.0 + fact * std::pow(q, -1.0 / 6.0) * std::log(q));
        double second = 3.0 * std::pow(A1, -1.0 / (2.0 * k + 3.0)) *
                        std::pow(q, -(2.0 * k - 1.0) / (2.0 * (2.0 * k + 3.0))) *
                        (1.0 + std::pow(q, -2.0 / 7.0) *
                                   (std::pow(7.0, k) + std::sqrt(oddfact) * std::log(q)));
        return std::min(first, second) / std::pow(1.0 - 2.0 / q, k);
    };
    CHECK(rhs_theorem2(199, 2, 80, 2) == near(hand_k2(199, 2, 80)));
    CHECK(rhs_theorem2(199, 3, 80, 1) == near(hand_k2(199, 3, 80)));

    // The large-subset refinement applies exactly when A1^4 >= q^3.
    CHECK(rhs_theorem2_large(16, 8) ==
          near(3.0 * std::pow(8.0, -0.2) * std::pow(16.0, -0.1) *
               (1.0 + std::pow(16.0, -0.125) * std::log(16.0))));
    CHECK_THROWS_AS(rhs_theorem2_large(16, 7), DomainError);

    auto hand_t3 = [&](double q, double k) {
        double fact = 1.0;
        for (double i = 2.0; i <= k + 1.0; ++i) fact *= i;
        return 3.0 * std::pow(q, -k / (2.0 * (k + 1.0))) *
               (1.0 + fact * std::pow(q, -1.0 / 6.0) * std::log(q)) /
               std::pow(1.0 - 2.0 / q, k);
    };
    CHECK(rhs_theorem3(101, 2) == near(hand_t3(101, 2)));
    CHECK(rhs_theorem3(101, 5) == near(hand_t3(101, 5)));
    CHECK_THROWS_AS(rhs_theorem3(101, 1), DomainError);
}

TEST_CASE("moment bounds") {
    auto hand_m1 = [](double q, double n, double a, double b, double rest) {
        if (n == 1) return std::sqrt(a * b) * rest * std::sqrt(q) * (1.0 + 0.5 / q);
        auto one = [&](double A1, double A2) {
            double first = std::sqrt(q + (n - 1.0) * A2 * std::sqrt(q));
            double second = std::pow(A2, 0.25) *
                            std::pow(4.0 * q * q + (n * n * n + 3.0) * std::pow(q, 1.5), 0.25);
            return std::sqrt(A1 * A2) * rest * std::min(first, second);
        };
        return std::min(one(a, b), one(b, a));
    };
    CHECK(rhs_moment1(101, 1, {30, 60}) == near(hand_m1(101, 1, 30, 60, 1)));
    CHECK(rhs_moment1(101, 3, {30, 60}) == near(hand_m1(101, 3, 30, 60, 1)));
    CHECK(rhs_moment1(101, 3, {30, 60, 99, 99}) == near(hand_m1(101, 3, 30, 60, 99.0 * 99.0)));

    auto hand_m2 = [](std::int64_t qi, std::int64_t p, std::int64_t n, std::int64_t k,
                      double A1, double rest, int m) {
        double q = static_cast<double>(qi);
        Monodromy g = group_for(p, n);
        double rk1 = static_cast<double>(r_lookup(g, k, 1));
        double rkk = static_cast<double>(r_lookup(g, k + 1, k + 1));
        double d = (m > 1) ? 1.0 : 0.0;
        double head = (k + 1.0) * A1 * rest * std::pow(q, k - 1.0 - n / 2.0);
        double first = A1 * std::pow(static_cast<double>(n), k) + d * rk1 * (std::sqrt(q) + 1.0);
        double second =
            std::sqrt(A1) * std::pow(q, 0.25) *
            std::sqrt(std::pow(static_cast<double>(n), 2.0 * k + 1.0) + rkk * (std::sqrt(q) + 1.0));
        return head + rest * std::pow(q, k / 2.0) * std::min(first, second);
    };
    CHECK(rhs_moment2(101, 101, 2, 1, {40}) == near(hand_m2(101, 101, 2, 1, 40, 1, 1)));
    CHECK(rhs_moment2(101, 101, 2, 2, {40, 50}) == near(hand_m2(101, 101, 2, 2, 40, 50, 2)));
    CHECK(rhs_moment2(49, 7, 3, 1, {12, 20}) == near(hand_m2(49, 7, 3, 1, 12, 20, 2)));

    auto hand_m3 = [](std::int64_t qi, std::int64_t p, std::int64_t n, std::int64_t k) {
        double q = static_cast<double>(qi);
        double rk1 = static_cast<double>(r_lookup(group_for(p, n), k, 1));
        return (k + 1.0) * std::pow(q, k - 1.0 - n / 2.0) +
               std::pow(q, k / 2.0) * (std::pow(static_cast<double>(n), k) +
                                       rk1 * (std::sqrt(q) + 1.0));
    };
    CHECK(rhs_moment3(101, 101, 2, 2) == near(hand_m3(101, 101, 2, 2)));
    CHECK(rhs_moment3(27, 3, 4, 3) == near(hand_m3(27, 3, 4, 3)));
}

TEST_CASE("limit exponents at exact rational points") {
    auto Q = [](long long n, long long d) { return bigrat(n, d); };
    CHECK(f_exponent(Q(0, 1), Q(0, 1)) == Q(0, 1));
    CHECK(f_exponent(Q(1, 2), Q(1, 2)) == Q(0, 1));
    CHECK(f_exponent(Q(4, 5), Q(4, 5)) == Q(1, 10));
    CHECK(f_exponent(Q(1, 1), Q(1, 3)) == Q(1, 6));
    CHECK(f_exponent(Q(8, 9), Q(8, 9)) == Q(1, 6));
    CHECK(f_exponent(Q(1, 1), Q(1, 1)) == Q(3, 14));
    CHECK(f_exponent(Q(1, 3), Q(1, 1)) == f_exponent(Q(1, 1), Q(1, 3)));
    CHECK_THROWS_AS(f_exponent(Q(-1, 2), Q(0, 1)), DomainError);
    CHECK_THROWS_AS(f_exponent(Q(1, 1), Q(3, 2)), DomainError);

    CHECK(g_exponent(1, 1, Q(0, 1)) == Q(1, 4));
    CHECK(g_exponent(2, 1, Q(0, 1)) == Q(1, 3));
    CHECK(g_exponent(1, 2, Q(0, 1)) == Q(0, 1));
    CHECK(g_exponent(1, 2, Q(1, 4)) == Q(1, 4));
    CHECK(g_exponent(1, 2, Q(3, 4)) == Q(1, 4));
    CHECK(g_exponent(1, 2, Q(1, 1)) == Q(3, 10));
    for (std::int64_t k = 1; k <= 4; ++k) {
        CHECK(g_exponent(k, 2, Q(1, 1)) == bigrat(2 * k + 1, 2 * (2 * k + 3)));
        // Adding one more unconstrained slot always helps a full family.
        CHECK(g_exponent(k, 2, Q(1, 1)) < g_exponent(k + 1, 2, Q(0, 1)));
    }
    CHECK_THROWS_AS(g_exponent(0, 1, Q(1, 2)), DomainError);
    CHECK_THROWS_AS(g_exponent(1, 0, Q(1, 2)), DomainError);
    CHECK_THROWS_AS(g_exponent(1, 1, Q(5, 4)), DomainError);
}

TEST_CASE("smoothing inequality bound") {
    EtBound one = erdos_turan({0.0}, 10);
    CHECK(one.value == near(0.5));
    CHECK(one.cutoff == 1);

    EtBound lin = erdos_turan({10.0}, 100);
    CHECK(lin.value == near(0.5 + (3.0 / 100.0) * 10.0));
    CHECK(lin.cutoff == 1);

    // A huge second moment makes K = 1 the best cutoff...
    EtBound big = erdos_turan({0.1, 1e9}, 1000000);
    CHECK(big.cutoff == 1);
    // ...while a tame one pushes the cutoff out.
    EtBound tame = erdos_turan({0.1, 1000.0}, 1000000);
    CHECK(tame.cutoff == 2);
    CHECK(tame.value == near(1.0 / 3.0 + (3.0 / 1e6) * (0.1 / 1.0 + 1000.0 / 2.0)));

    CHECK_THROWS_AS(erdos_turan({}, 10), DomainError);
    CHECK_THROWS_AS(erdos_turan({1.0}, 0), DomainError);
}

TEST_CASE("doubles decompose exactly into rationals") {
    CHECK(rational_from_double(0.5) == bigrat(1, 2));
    CHECK(rational_from_double(-3.75) == bigrat(-15, 4));
    CHECK(rational_from_double(3.0) == bigrat(3));
    CHECK(rational_from_double(0.1) != bigrat(1, 10));  // 0.1 is not binary
    std::mt19937_64 rng(99);
    for (int i = 0; i < 50; ++i) {
        double x = (static_cast<double>(rng() >> 11) * 0x1p-53 - 0.5) * 1e6;
        CHECK(rational_from_double(x).convert_to<double>() == x);
    }
}
