#pragma once

#include <cstdint>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/errors.hpp"
#include "charsum/numeric.hpp"

namespace charsum {

/// Gauss sum G(chi_j) = sum over units a of psi(a) chi_j(a), by the literal
/// loop. Reference path; quadratic in q when used for every j.
cplx gauss_naive(const CharTable& chars, std::int64_t j);

/// All Gauss sums at once: out[j] = G(chi_j) for j in [0, q-2], computed as a
/// single length-(q-1) transform of k -> psi(g^k). out[0] = -1 comes out of
/// the same formula.
std::vector<cplx> gauss_all(const CharTable& chars);

/// Jacobi sum J(chi_{j_1}, ..., chi_{j_m}) from precomputed Gauss sums via
/// J = q^{-1} (prod_i G(chi_{j_i})) conj(G(prod_i chi_{j_i})).
/// Throws ProductTrivial unless every chi_{j_i} and their product is
/// nontrivial; throws DomainError for m < 2 or a `gauss` table of wrong size.
cplx jacobi_via_gauss(const CharTable& chars, const std::vector<cplx>& gauss,
                      const std::vector<std::int64_t>& js);
/// Same, computing the Gauss table internally.
cplx jacobi_via_gauss(const CharTable& chars, const std::vector<std::int64_t>& js);

/// Jacobi sum by its definition: sum over a_1 + ... + a_m = 1 (all a_i units)
/// of prod_i chi_{j_i}(a_i), evaluated as an (m-1)-fold additive convolution
/// over F_q read off at 1. Accepts trivial characters; m >= 2.
cplx jacobi_direct(const CharTable& chars, const std::vector<std::int64_t>& js);

/// Kloosterman sum Kl_n(a) = sum over a_1 ... a_n = a (units) of
/// psi(a_1 + ... + a_n), via n-1 quadratic cyclic convolutions in log
/// coordinates. Independent of the fast transform engine. Throws ZeroArgument
/// when a is zero, DomainError for n < 1.
cplx kloosterman_direct(const CharTable& chars, std::int64_t n, felem a);

/// All Kloosterman sums at once: out[t] = Kl_n(g^t), recovered from the Gauss
/// table by Kl_n(g^t) = dft(G^n)[t] / (q-1). Rounding grows with the magnitude
/// q^{n/2} of the transformed terms; inputs beyond n = 6 or q = 10^5 throw
/// PrecisionCapExceeded rather than return digits that cannot be trusted.
std::vector<cplx> kloosterman_all(const CharTable& chars, std::int64_t n);

/// Normalized angles in [0, 1) of J / |J| for every tuple in
/// subsets[0] x ... x subsets[m-1] whose character product is nontrivial,
/// streamed without materializing tuples. Each angle is an exact index
/// computation: arg(J)/2pi = sum_i alpha_{j_i} - alpha_{prod} with
/// alpha_j = arg(G(chi_j))/2pi taken from the precomputed Gauss table.
/// Subset entries must be nontrivial character indices (DomainError
/// otherwise). Throws TupleBudgetExceeded when the full tuple count would
/// pass `tuple_cap`.
std::vector<double> jacobi_angles(const CharTable& chars, const std::vector<cplx>& gauss,
                                  const std::vector<std::vector<std::int64_t>>& subsets,
                                  std::uint64_t tuple_cap = 100'000'000ULL);

} // namespace charsum
