#pragma once

#include <cstdint>
#include <vector>

#include "charsum/errors.hpp"
#include "charsum/finite_field.hpp"
#include "charsum/numeric.hpp"

namespace charsum {

/// Character evaluation over a fixed field, backed by root-of-unity tables of
/// orders p (additive) and q-1 (multiplicative) so repeated evaluation costs a
/// table lookup plus index arithmetic.
///
/// Additive characters: psi_b(x) = e^{2 pi i Tr(bx)/p}; the canonical psi is
/// psi_1. Multiplicative characters are indexed by j mod (q-1):
/// chi_j(g^k) = e^{2 pi i jk/(q-1)}; chi_0 is trivial. Character product and
/// conjugate are index addition and negation mod q-1.
class CharTable {
public:
    explicit CharTable(const FieldTable& field);

    const FieldTable& field() const { return *field_; }
    /// Order of the character group, q - 1.
    std::int64_t group_order() const { return m_; }

    /// Reduces a character index into [0, q-2].
    std::int64_t normalize(std::int64_t j) const { return ((j % m_) + m_) % m_; }
    bool is_trivial(std::int64_t j) const { return normalize(j) == 0; }
    std::int64_t conj_index(std::int64_t j) const { return normalize(-j); }
    /// Order of chi_j in the character group.
    std::int64_t char_order(std::int64_t j) const;

    /// psi_1(x).
    cplx psi(felem x) const { return root_p_[static_cast<std::size_t>(field_->trace(x))]; }
    /// psi_b(x) = psi_1(bx).
    cplx psi(felem b, felem x) const { return psi(field_->mul(b, x)); }

    /// chi_j(x); throws EvalAtZero when x is the zero element.
    cplx chi(std::int64_t j, felem x) const {
        if (x == kZeroElem) throw EvalAtZero();
        return chi_at_log(j, x);
    }
    /// chi_j(g^k) straight from the table; k need not be reduced.
    cplx chi_at_log(std::int64_t j, std::int64_t k) const {
        std::int64_t t = normalize(j) * (((k % m_) + m_) % m_) % m_;
        return root_m_[static_cast<std::size_t>(t)];
    }
    /// e^{2 pi i t/(q-1)} for t in [0, q-2].
    cplx unit_root_m(std::int64_t t) const { return root_m_[static_cast<std::size_t>(t)]; }

private:
    const FieldTable* field_;
    std::int64_t m_; ///< q - 1
    std::vector<cplx> root_p_;
    std::vector<cplx> root_m_;
};

/// Uniformly random size-`size` subset of {1, ..., universe}, sorted ascending.
/// Reproducible across platforms for a fixed seed: mt19937_64 with hand-rolled
/// rejection-sampled bounded draws and a partial Fisher-Yates shuffle
/// (std::uniform_int_distribution is implementation-defined and is avoided).
/// Throws SizeOutOfRange unless 0 <= size <= universe.
std::vector<std::int64_t> random_subset(std::int64_t universe, std::int64_t size,
                                        std::uint64_t seed);

} // namespace charsum
