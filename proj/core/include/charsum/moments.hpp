#pragma once

#include <cstdint>
#include <vector>

#include "charsum/characters.hpp"
#include "charsum/errors.hpp"
#include "charsum/numeric.hpp"

namespace charsum {

/// n-th moment of the normalized Jacobi-sum family: with s = m + k_extra slots,
/// the first m constrained to the given subsets (nontrivial character indices)
/// and k_extra slots running over all nontrivial characters,
///   M(n) = q^{-n(s-1)/2} sum over tuples with nontrivial product of J(...)^n.
/// Evaluated as one cyclic convolution over the character group:
///   M(n) = sum_{rho != 0} (f_1 * ... * f_s)[rho] conj(u_rho)^... with
///   f_i[j] = [j admitted] (G_j / sqrt q)^n, read against conj((G_rho/sqrt q)^n),
/// which keeps every intermediate bounded by powers of q-1 (no overflow).
/// `gauss` is the length-(q-1) Gauss table. Requires s >= 2 and n >= 1; throws
/// PrecisionCapExceeded when s (log2(q-1) + (n/2) log2 q) >= 1000, where the
/// unnormalized terms would outrange doubles.
cplx moment(const CharTable& chars, const std::vector<cplx>& gauss,
            const std::vector<std::vector<std::int64_t>>& subsets, std::int64_t k_extra,
            std::int64_t n);

/// Same value by direct tuple enumeration (reference path; cost is the tuple
/// count times s).
cplx moment_brute(const CharTable& chars, const std::vector<cplx>& gauss,
                  const std::vector<std::vector<std::int64_t>>& subsets, std::int64_t k_extra,
                  std::int64_t n);

/// sum over units a of Kl(a)^k conj(Kl(a))^l, from a table kl[t] = Kl(g^t).
cplx kloosterman_power_sum(const std::vector<cplx>& kl, std::int64_t k, std::int64_t l);

/// Twisted variant: sum over units of chi_twist(a) Kl(a)^k conj(Kl(a))^l.
/// Throws TrivialTwist when chi_twist is trivial (the untwisted sum obeys a
/// different bound).
cplx kloosterman_power_sum_twisted(const CharTable& chars, const std::vector<cplx>& kl,
                                   std::int64_t k, std::int64_t l, std::int64_t twist);

} // namespace charsum
