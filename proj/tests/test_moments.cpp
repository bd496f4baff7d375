#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/errors.hpp"
#include "charsum/exp_sums.hpp"
#include "charsum/finite_field.hpp"
#include "charsum/moments.hpp"
#include "doctest.h"

using namespace charsum;

namespace {

std::vector<std::int64_t> full_units(std::int64_t q) {
    std::vector<std::int64_t> v;
    for (std::int64_t j = 1; j <= q - 2; ++j) v.push_back(j);
    return v;
}

} // namespace

TEST_CASE("convolution moment matches brute enumeration") {
    for (std::int64_t q : {7, 9, 11, 13}) {
        FieldTable f(q);
        CharTable chars(f);
        std::vector<cplx> gauss = gauss_all(chars);
        std::vector<std::int64_t> full = full_units(q);
        std::vector<std::int64_t> half = random_subset(q - 2, (q - 2) / 2, 11);
        for (std::int64_t m : {2, 3}) {
            for (std::int64_t kx : {0, 1}) {
                std::vector<std::vector<std::int64_t>> slots(m, full);
                slots[0] = half;
                for (std::int64_t n = 1; n <= 3; ++n) {
                    cplx a = moment(chars, gauss, slots, kx, n);
                    cplx b = moment_brute(chars, gauss, slots, kx, n);
                    CHECK(std::abs(a - b) <= 1e-9 * (1.0 + std::abs(b)));
                }
            }
        }
    }
}

TEST_CASE("moment preconditions") {
    FieldTable f(7);
    CharTable chars(f);
    std::vector<cplx> gauss = gauss_all(chars);
    std::vector<std::vector<std::int64_t>> one(1, full_units(7));
    CHECK_THROWS_AS(moment(chars, gauss, one, 0, 1), DomainError);
    CHECK_THROWS_AS(moment(chars, gauss, {full_units(7), full_units(7)}, 0, 0), DomainError);
}

TEST_CASE("precision cap guards huge unnormalized terms") {
    FieldTable f(199);
    CharTable chars(f);
    std::vector<cplx> gauss = gauss_all(chars);
    std::vector<std::vector<std::int64_t>> slots(3, full_units(199));
    // s = 5 slots: the per-tuple magnitude q^{n s / 2} overflows the budget at
    // n = 51 but not at n = 49.
    CHECK_THROWS_AS(moment(chars, gauss, slots, 2, 51), PrecisionCapExceeded);
    CHECK_NOTHROW(moment(chars, gauss, slots, 2, 49));
}

TEST_CASE("kloosterman power sums") {
    FieldTable f(7);
    CharTable chars(f);
    for (std::int64_t n : {1, 2, 3}) {
        std::vector<cplx> kl = kloosterman_all(chars, n);
        // (k, l) = (0, 0) counts the units; (1, 0) telescopes to a sign.
        CHECK(std::abs(kloosterman_power_sum(kl, 0, 0) - cplx(6.0, 0.0)) < 1e-12);
        double sign = (n % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(kloosterman_power_sum(kl, 1, 0) - cplx(sign, 0.0)) < 1e-10);
        // Swapping k and l conjugates the sum.
        cplx a = kloosterman_power_sum(kl, 2, 1);
        cplx b = kloosterman_power_sum(kl, 1, 2);
        CHECK(std::abs(a - std::conj(b)) < 1e-10);
    }
}

TEST_CASE("twisted power sums") {
    FieldTable f(11);
    CharTable chars(f);
    std::vector<cplx> kl = kloosterman_all(chars, 2);
    CHECK_THROWS_AS(kloosterman_power_sum_twisted(chars, kl, 1, 1, 0), TrivialTwist);
    CHECK_THROWS_AS(kloosterman_power_sum_twisted(chars, kl, 1, 1, 10), TrivialTwist);
    // With k = l = 0 the twisted sum is a bare character sum, hence zero.
    CHECK(std::abs(kloosterman_power_sum_twisted(chars, kl, 0, 0, 3)) < 1e-10);
    // Twisting by chi and by conj(chi) gives conjugate sums for real kl tables.
    cplx a = kloosterman_power_sum_twisted(chars, kl, 2, 0, 3);
    cplx b = kloosterman_power_sum_twisted(chars, kl, 0, 2, 7);
    CHECK(std::abs(a - std::conj(b)) < 1e-10);
}

TEST_CASE("first moment of the full family collapses") {
    // With every slot full, tuples with nontrivial product character make the
    // n = 1 moment a pure Gauss-sum identity; check against brute force only
    // once here, and check the family is real up to rounding.
    FieldTable f(17);
    CharTable chars(f);
    std::vector<cplx> gauss = gauss_all(chars);
    std::vector<std::vector<std::int64_t>> slots(2, full_units(17));
    for (std::int64_t n = 1; n <= 4; ++n) {
        cplx v = moment(chars, gauss, slots, 0, n);
        CHECK(std::abs(v.imag()) < 1e-9 * (1.0 + std::abs(v)));
    }
}
