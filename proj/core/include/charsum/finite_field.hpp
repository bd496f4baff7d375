#pragma once

#include <cstdint>
#include <vector>

#include "charsum/errors.hpp"

namespace charsum {

/// Field element in discrete-log form: kZeroElem denotes 0, any other value is
/// the exponent k in [0, q-2] of the canonical generator, i.e. the element g^k.
using felem = std::int32_t;
inline constexpr felem kZeroElem = -1;

struct PrimePower {
    std::int64_t p; ///< prime
    std::int64_t r; ///< exponent, >= 1
    std::int64_t q; ///< p^r
};

/// Splits q into (p, r) with q = p^r, p prime, r >= 1.
/// Throws NotPrime if q is not a prime power (including q <= 1).
PrimePower factor_prime_power(std::int64_t q);

/// Deterministic trial-division primality test.
bool is_prime(std::int64_t n);

/// Lookup tables for arithmetic in F_q, q = p^r.
///
/// Elements are indexed two ways:
///  - "index" (element code): the base-p digit code sum c_i p^i of the
///    coefficient vector in the polynomial basis, in [0, q-1]; 0 is the zero
///    element and 1 is the unit.
///  - "log" (felem): discrete log w.r.t. the canonical generator, with
///    kZeroElem for 0.
///
/// Canonical choices make every table reproducible across runs and platforms:
/// the modulus is the irreducible monic polynomial of degree r whose code is
/// smallest, and the generator is the unit of smallest index with
/// multiplicative order q-1.
class FieldTable {
public:
    /// Largest supported field order; bounds table memory (four int32 tables).
    static constexpr std::int64_t kMaxOrder = std::int64_t{1} << 24;

    /// Builds all tables for F_q.
    /// Throws FieldTooLarge (q > kMaxOrder), FieldTooSmall (q < 3: the unit
    /// group must admit a nontrivial character), NotPrime (q not a prime power).
    explicit FieldTable(std::int64_t q);

    std::int64_t p() const { return p_; }
    std::int64_t r() const { return r_; }
    std::int64_t q() const { return q_; }
    /// Order of the unit group, q - 1.
    std::int64_t units() const { return q_ - 1; }

    /// Modulus coefficients c_0..c_r (monic, c_r = 1) for r >= 2; empty for r = 1.
    const std::vector<std::int32_t>& modulus() const { return modulus_; }

    /// Element code of the canonical generator.
    std::int32_t generator_index() const { return exp_[1]; }

    felem zero() const { return kZeroElem; }
    felem one() const { return 0; }

    /// Element code of g^k; inverse of log_of.
    std::int32_t index_of(felem a) const { return a == kZeroElem ? 0 : exp_[a]; }
    /// Discrete log of the element with the given code (kZeroElem for code 0).
    felem log_of(std::int32_t index) const { return log_[index]; }
    /// Embeds the residue v mod p into the prime subfield.
    felem from_residue(std::int64_t v) const;

    felem mul(felem a, felem b) const {
        if (a == kZeroElem || b == kZeroElem) return kZeroElem;
        std::int64_t s = std::int64_t{a} + b;
        if (s >= q_ - 1) s -= q_ - 1;
        return static_cast<felem>(s);
    }

    /// Addition via the Zech table: g^a + g^b = g^a (1 + g^{b-a}).
    felem add(felem a, felem b) const {
        if (a == kZeroElem) return b;
        if (b == kZeroElem) return a;
        felem d = b - a;
        if (d < 0) d += static_cast<felem>(q_ - 1);
        felem z = zech_[d];
        if (z == kZeroElem) return kZeroElem;
        return mul_unit(a, z);
    }

    felem neg(felem a) const {
        if (a == kZeroElem) return kZeroElem;
        return mul_unit(a, neg_one_log_);
    }

    felem sub(felem a, felem b) const { return add(a, neg(b)); }

    /// Throws DivisionByZero on the zero element.
    felem inv(felem a) const {
        if (a == kZeroElem) throw DivisionByZero();
        return a == 0 ? 0 : static_cast<felem>(q_ - 1 - a);
    }

    /// a^e with 0^0 = 1; throws DivisionByZero for 0^e with e < 0.
    felem pow(felem a, std::int64_t e) const;

    /// Absolute trace into F_p, as an integer in [0, p).
    std::int32_t trace(felem a) const { return trace_[index_of(a)]; }

    /// Zech log Z(k) with g^{Z(k)} = 1 + g^k; kZeroElem when 1 + g^k = 0.
    felem zech(felem k) const { return zech_[k]; }

    /// Addition on element codes: digit-wise base-p addition of the
    /// coefficient vectors. Independent of the log tables.
    std::int32_t index_add(std::int32_t i, std::int32_t j) const;
    /// Negation on element codes.
    std::int32_t index_neg(std::int32_t i) const;

private:
    felem mul_unit(felem a, felem b) const {
        std::int64_t s = std::int64_t{a} + b;
        if (s >= q_ - 1) s -= q_ - 1;
        return static_cast<felem>(s);
    }

    std::int64_t p_ = 0, r_ = 0, q_ = 0;
    std::int32_t neg_one_log_ = 0;
    std::vector<std::int32_t> modulus_;
    std::vector<std::int32_t> exp_;   ///< log k -> element code of g^k
    std::vector<felem> log_;          ///< element code -> log (kZeroElem at 0)
    std::vector<felem> zech_;         ///< k -> log(1 + g^k), kZeroElem if zero
    std::vector<std::int32_t> trace_; ///< element code -> trace in [0, p)
};

/// Convenience constructor wrapper.
inline FieldTable build_field(std::int64_t q) { return FieldTable(q); }

} // namespace charsum
