#include <cstdint>
#include <vector>

#include "charsum/errors.hpp"
#include "charsum/finite_field.hpp"
#include "doctest.h"

using namespace charsum;

TEST_CASE("primality of small integers") {
    CHECK(is_prime(2));
    CHECK(is_prime(3));
    CHECK(is_prime(97));
    CHECK(is_prime(7919));
    CHECK_FALSE(is_prime(1));
    CHECK_FALSE(is_prime(0));
    CHECK_FALSE(is_prime(-7));
    CHECK_FALSE(is_prime(91));   // 7 * 13
    CHECK_FALSE(is_prime(561));  // Carmichael
}

TEST_CASE("prime power factorization") {
    auto check_pp = [](std::int64_t q, std::int64_t p, std::int64_t r) {
        PrimePower pp = factor_prime_power(q);
        CHECK(pp.p == p);
        CHECK(pp.r == r);
        CHECK(pp.q == q);
    };
    check_pp(8, 2, 3);
    check_pp(9, 3, 2);
    check_pp(49, 7, 2);
    check_pp(9973, 9973, 1);
    CHECK_THROWS_AS(factor_prime_power(12), NotPrime);
    CHECK_THROWS_AS(factor_prime_power(1), DomainError);
    CHECK_THROWS_AS(factor_prime_power(0), DomainError);
}

TEST_CASE("field construction rejects bad orders") {
    CHECK_THROWS_AS(FieldTable(2), FieldTooSmall);
    CHECK_THROWS_AS(FieldTable(12), NotPrime);
    CHECK_THROWS_AS(FieldTable(INT64_C(1) << 25), FieldTooLarge);
}

TEST_CASE("prime field arithmetic matches residue arithmetic") {
    FieldTable f(7);
    CHECK(f.p() == 7);
    CHECK(f.r() == 1);
    CHECK(f.q() == 7);
    CHECK(f.generator_index() == 3);
    for (std::int64_t a = 0; a < 7; ++a) {
        for (std::int64_t b = 0; b < 7; ++b) {
            felem ea = f.from_residue(a);
            felem eb = f.from_residue(b);
            CHECK(f.add(ea, eb) == f.from_residue((a + b) % 7));
            CHECK(f.mul(ea, eb) == f.from_residue((a * b) % 7));
            CHECK(f.sub(ea, eb) == f.from_residue((a - b + 7) % 7));
        }
    }
}

TEST_CASE("quadratic extension tables") {
    FieldTable f(9);
    CHECK(f.p() == 3);
    CHECK(f.r() == 2);
    // Smallest-code monic irreducible of degree 2 over F_3 is x^2 + 1.
    const std::vector<std::int32_t> want_modulus{1, 0, 1};
    CHECK(f.modulus() == want_modulus);
    CHECK(f.generator_index() == 4);  // x + 1 in base-3 digit encoding

    // Index arithmetic must agree with log-space arithmetic everywhere.
    for (std::int32_t i = 0; i < 9; ++i) {
        for (std::int32_t j = 0; j < 9; ++j) {
            felem s = f.add(f.log_of(i), f.log_of(j));
            CHECK(f.index_of(s) == f.index_add(i, j));
        }
        CHECK(f.index_of(f.neg(f.log_of(i))) == f.index_neg(i));
    }

    // trace(a) = a + a^p lands in the prime subfield, whose codes are the residues.
    for (std::int32_t i = 0; i < 9; ++i) {
        felem a = f.log_of(i);
        std::int64_t tr = f.trace(a);
        CHECK(tr >= 0);
        CHECK(tr < 3);
        CHECK(f.index_of(f.add(a, f.pow(a, 3))) == tr);
    }
}

TEST_CASE("zech logarithms satisfy g^Z(k) = 1 + g^k") {
    for (std::int64_t q : {5, 7, 9, 27, 49}) {
        FieldTable f(q);
        for (std::int64_t k = 0; k < q - 1; ++k) {
            felem gk = static_cast<felem>(k);
            felem sum = f.add(f.one(), gk);
            CHECK(f.zech(gk) == sum);
        }
    }
}

TEST_CASE("inverses and powers") {
    FieldTable f(27);
    for (std::int64_t k = 0; k < 26; ++k) {
        felem a = static_cast<felem>(k);
        CHECK(f.mul(a, f.inv(a)) == f.one());
        CHECK(f.pow(a, 26) == f.one());
        CHECK(f.pow(a, -1) == f.inv(a));
        CHECK(f.pow(a, 5) == f.mul(a, f.mul(a, f.mul(a, f.mul(a, a)))));
    }
    CHECK(f.pow(f.zero(), 0) == f.one());
    CHECK(f.pow(f.zero(), 3) == f.zero());
    CHECK_THROWS_AS(f.inv(f.zero()), DivisionByZero);
    CHECK_THROWS_AS(f.pow(f.zero(), -2), DivisionByZero);
}

TEST_CASE("generator order is exactly q - 1") {
    for (std::int64_t q : {5, 7, 9, 11, 25, 27}) {
        FieldTable f(q);
        felem g = f.log_of(f.generator_index());
        CHECK(g == 1);  // the generator's own discrete log
        felem acc = f.one();
        for (std::int64_t k = 1; k < q - 1; ++k) {
            acc = f.mul(acc, g);
            CHECK(acc != f.one());
        }
        CHECK(f.mul(acc, g) == f.one());
    }
}
