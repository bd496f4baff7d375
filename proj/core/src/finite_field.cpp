#include "charsum/finite_field.hpp"

#include <algorithm>

namespace charsum {
namespace {

// Dense coefficient vector over F_p, lowest degree first, no trailing zeros.
using Poly = std::vector<std::int32_t>;

void poly_trim(Poly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

Poly poly_mul_mod(const Poly& a, const Poly& b, const Poly& mod, std::int64_t p) {
    if (a.empty() || b.empty()) return {};
    Poly prod(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j)
            prod[i + j] = static_cast<std::int32_t>((prod[i + j] + std::int64_t{a[i]} * b[j]) % p);
    }
    // Reduce by the monic modulus of degree d = mod.size() - 1.
    std::size_t d = mod.size() - 1;
    for (std::size_t i = prod.size(); i-- > d;) {
        std::int32_t c = prod[i];
        if (c == 0) continue;
        prod[i] = 0;
        for (std::size_t j = 0; j < d; ++j) {
            std::int64_t v = prod[i - d + j] - std::int64_t{c} * mod[j] % p;
            prod[i - d + j] = static_cast<std::int32_t>(((v % p) + p) % p);
        }
    }
    prod.resize(std::min(prod.size(), d));
    poly_trim(prod);
    return prod;
}

Poly poly_pow_mod(Poly base, std::int64_t e, const Poly& mod, std::int64_t p) {
    Poly result{1};
    while (e > 0) {
        if (e & 1) result = poly_mul_mod(result, base, mod, p);
        base = poly_mul_mod(base, base, mod, p);
        e >>= 1;
    }
    return result;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
    // Fermat; p prime, a not divisible by p.
    std::int64_t e = p - 2, result = 1;
    a %= p;
    while (e > 0) {
        if (e & 1) result = result * a % p;
        a = a * a % p;
        e >>= 1;
    }
    return result;
}

Poly poly_mod(Poly a, const Poly& b, std::int64_t p) {
    std::int64_t lc_inv = inv_mod(b.back(), p);
    while (a.size() >= b.size() && !a.empty()) {
        std::int64_t c = a.back() % p * lc_inv % p;
        std::size_t shift = a.size() - b.size();
        for (std::size_t j = 0; j < b.size(); ++j) {
            std::int64_t v = a[shift + j] - c * b[j] % p;
            a[shift + j] = static_cast<std::int32_t>(((v % p) + p) % p);
        }
        poly_trim(a);
    }
    return a;
}

Poly poly_gcd(Poly a, Poly b, std::int64_t p) {
    while (!b.empty()) {
        Poly rem = poly_mod(std::move(a), b, p);
        a = std::move(b);
        b = std::move(rem);
    }
    return a;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
    std::vector<std::int64_t> out;
    for (std::int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

std::int64_t ipow(std::int64_t b, std::int64_t e) {
    std::int64_t v = 1;
    while (e-- > 0) v *= b;
    return v;
}

// Rabin: f (monic, degree r >= 1) is irreducible over F_p iff x^{p^r} = x mod f
// and gcd(x^{p^{r/s}} - x, f) = 1 for every prime s | r.
bool is_irreducible(const Poly& f, std::int64_t p) {
    std::int64_t r = static_cast<std::int64_t>(f.size()) - 1;
    Poly x{0, 1};
    Poly xq = poly_pow_mod(x, ipow(p, r), f, p);
    poly_trim(xq);
    if (xq != x) return false;
    for (std::int64_t s : prime_factors(r)) {
        Poly xe = poly_pow_mod(x, ipow(p, r / s), f, p);
        // xe - x
        if (xe.size() < 2) xe.resize(2, 0);
        xe[1] = static_cast<std::int32_t>(((xe[1] - 1) % p + p) % p);
        poly_trim(xe);
        Poly g = poly_gcd(f, xe, p);
        if (g.size() != 1) return false;
    }
    return true;
}

std::int32_t code_of(const Poly& f, std::int64_t p) {
    std::int64_t code = 0, scale = 1;
    for (std::int32_t c : f) {
        code += c * scale;
        scale *= p;
    }
    return static_cast<std::int32_t>(code);
}

Poly poly_of_code(std::int64_t code, std::int64_t p) {
    Poly f;
    while (code > 0) {
        f.push_back(static_cast<std::int32_t>(code % p));
        code /= p;
    }
    return f;
}

} // namespace

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0) return false;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimePower factor_prime_power(std::int64_t q) {
    if (q < 2) throw NotPrime(q);
    std::int64_t p = q;
    for (std::int64_t d = 2; d * d <= q; ++d) {
        if (q % d == 0) {
            p = d;
            break;
        }
    }
    std::int64_t rem = q, r = 0;
    while (rem % p == 0) {
        rem /= p;
        ++r;
    }
    if (rem != 1) throw NotPrime(q);
    return {p, r, q};
}

FieldTable::FieldTable(std::int64_t q) {
    if (q > kMaxOrder) throw FieldTooLarge(q);
    if (q < 3) throw FieldTooSmall(q);
    PrimePower pp = factor_prime_power(q);
    p_ = pp.p;
    r_ = pp.r;
    q_ = pp.q;
    neg_one_log_ = p_ == 2 ? 0 : static_cast<std::int32_t>((q_ - 1) / 2);

    // Canonical modulus: the monic irreducible polynomial of degree r whose
    // non-leading coefficient code is smallest.
    Poly mod;
    if (r_ >= 2) {
        for (std::int64_t low = 1;; ++low) {
            Poly f = poly_of_code(low, p_);
            f.resize(static_cast<std::size_t>(r_) + 1, 0);
            f[static_cast<std::size_t>(r_)] = 1;
            if (is_irreducible(f, p_)) {
                mod = f;
                break;
            }
        }
        modulus_ = mod;
    }

    // Canonical generator: unit of smallest element code with order q - 1.
    auto order_factors = prime_factors(q_ - 1);
    auto pow_code = [&](std::int64_t code, std::int64_t e) {
        if (r_ == 1) {
            std::int64_t b = code % p_, v = 1;
            while (e > 0) {
                if (e & 1) v = v * b % p_;
                b = b * b % p_;
                e >>= 1;
            }
            return v;
        }
        Poly b = poly_of_code(code, p_);
        return static_cast<std::int64_t>(code_of(poly_pow_mod(b, e, mod, p_), p_));
    };
    std::int64_t gen = 0;
    for (std::int64_t cand = 2; cand < q_; ++cand) {
        bool primitive = true;
        for (std::int64_t ell : order_factors) {
            if (pow_code(cand, (q_ - 1) / ell) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) {
            gen = cand;
            break;
        }
    }

    exp_.assign(static_cast<std::size_t>(q_ - 1), 0);
    log_.assign(static_cast<std::size_t>(q_), kZeroElem);
    if (r_ == 1) {
        std::int64_t acc = 1;
        for (std::int64_t k = 0; k < q_ - 1; ++k) {
            exp_[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(acc);
            log_[static_cast<std::size_t>(acc)] = static_cast<felem>(k);
            acc = acc * gen % p_;
        }
    } else {
        Poly g = poly_of_code(gen, p_);
        Poly acc{1};
        for (std::int64_t k = 0; k < q_ - 1; ++k) {
            std::int32_t code = code_of(acc, p_);
            exp_[static_cast<std::size_t>(k)] = code;
            log_[static_cast<std::size_t>(code)] = static_cast<felem>(k);
            acc = poly_mul_mod(acc, g, mod, p_);
        }
    }

    // Zech table: zech_[k] = log(1 + g^k), built from the unit-increment of codes.
    zech_.assign(static_cast<std::size_t>(q_ - 1), kZeroElem);
    for (std::int64_t k = 0; k < q_ - 1; ++k) {
        std::int32_t code = exp_[static_cast<std::size_t>(k)];
        std::int32_t c0 = static_cast<std::int32_t>(code % p_);
        std::int32_t bumped = code - c0 + (c0 + 1) % static_cast<std::int32_t>(p_);
        zech_[static_cast<std::size_t>(k)] = log_[static_cast<std::size_t>(bumped)];
    }

    // Trace table: sum of Frobenius conjugates, accumulated digit-wise. The
    // result always lies in the prime subfield, i.e. the code is a constant.
    trace_.assign(static_cast<std::size_t>(q_), 0);
    for (std::int64_t code = 1; code < q_; ++code) {
        if (r_ == 1) {
            trace_[static_cast<std::size_t>(code)] = static_cast<std::int32_t>(code);
            continue;
        }
        std::int64_t k = log_[static_cast<std::size_t>(code)];
        std::vector<std::int64_t> coeffs(static_cast<std::size_t>(r_), 0);
        std::int64_t kp = k;
        for (std::int64_t i = 0; i < r_; ++i) {
            std::int64_t conj = exp_[static_cast<std::size_t>(kp)];
            for (std::size_t j = 0; j < coeffs.size(); ++j) {
                coeffs[j] += conj % p_;
                conj /= p_;
            }
            kp = kp * p_ % (q_ - 1);
        }
        for (std::size_t j = 1; j < coeffs.size(); ++j) {
            if (coeffs[j] % p_ != 0)
                throw Error("internal: trace escaped the prime subfield");
        }
        trace_[static_cast<std::size_t>(code)] = static_cast<std::int32_t>(coeffs[0] % p_);
    }
}

felem FieldTable::from_residue(std::int64_t v) const {
    std::int64_t c = ((v % p_) + p_) % p_;
    return log_[static_cast<std::size_t>(c)];
}

felem FieldTable::pow(felem a, std::int64_t e) const {
    if (a == kZeroElem) {
        if (e == 0) return 0;
        if (e < 0) throw DivisionByZero();
        return kZeroElem;
    }
    std::int64_t m = q_ - 1;
    std::int64_t em = ((e % m) + m) % m;
    return static_cast<felem>(std::int64_t{a} * em % m);
}

std::int32_t FieldTable::index_add(std::int32_t i, std::int32_t j) const {
    std::int64_t out = 0, scale = 1;
    for (std::int64_t d = 0; d < r_; ++d) {
        out += (i % p_ + j % p_) % p_ * scale;
        i = static_cast<std::int32_t>(i / p_);
        j = static_cast<std::int32_t>(j / p_);
        scale *= p_;
    }
    return static_cast<std::int32_t>(out);
}

std::int32_t FieldTable::index_neg(std::int32_t i) const {
    std::int64_t out = 0, scale = 1;
    for (std::int64_t d = 0; d < r_; ++d) {
        out += (p_ - i % p_) % p_ * scale;
        i = static_cast<std::int32_t>(i / p_);
        scale *= p_;
    }
    return static_cast<std::int32_t>(out);
}

} // namespace charsum
