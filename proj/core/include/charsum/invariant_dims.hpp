#pragma once

#include <cstdint>

#include <boost/multiprecision/cpp_int.hpp>

#include "charsum/errors.hpp"

namespace charsum {

using bigint = boost::multiprecision::cpp_int;

/// Symmetry type of the rank-n Kloosterman family in characteristic p.
enum class Group { Mu, Sp, Sl, So, G2 };

struct Monodromy {
    Group group;
    std::int64_t n; ///< dimension of the standard representation
    std::int64_t p; ///< characteristic (only Mu depends on it)
};

/// Classification by rank and characteristic:
/// n = 1 -> Mu; n even -> Sp_n; p odd, n >= 3 odd -> SL_n;
/// p = 2, n odd, n not in {1,7} -> SO_n; p = 2, n = 7 -> G_2.
/// Throws Unclassified for inputs outside the table (p not prime or n < 1).
Monodromy group_for(std::int64_t p, std::int64_t n);

/// R^{k,l}: dimension of the G-invariants of V^{tensor k} (x) (V*)^{tensor l},
/// V the n-dimensional standard representation. Symmetric in (k, l). Cached.
bigint r_lookup(const Monodromy& g, std::int64_t k, std::int64_t l);

/// Mu_p: 1 when k = l mod p, else 0.
bigint r_mu(std::int64_t p, std::int64_t k, std::int64_t l);

/// Sp_n (n even): closed walks of length `steps` from the empty partition to
/// itself, one box added or removed per step, at most n/2 parts throughout.
bigint r_sp(std::int64_t n, std::int64_t steps);

/// SO_n (n odd >= 3): walks of length `steps` from the empty partition, one
/// box added or removed per step, where every state (endpoints included) has
/// first-two-column box total at most n. Endpoint is the empty partition for
/// even length and the full column (1,...,1) of n boxes for odd length.
bigint r_so(std::int64_t n, std::int64_t steps);

/// SL_n: 0 unless k = l mod n; otherwise walks of k sigma*-expansions followed
/// by l sigma-expansions from the empty partition to the n-row rectangle of
/// width (k(n-1)+l)/n. A sigma-expansion adds one box (at most n parts); a
/// sigma*-expansion of lambda removes one box from (lambda_1+1,...,lambda_n+1).
bigint r_sl(std::int64_t n, std::int64_t k, std::int64_t l);

/// G_2: closed walks of length `steps` on partitions (lambda_1 >= lambda_2 >= 0)
/// from (0,0) to itself, where a step adds a box, removes a box, moves a box
/// between the two rows, or stays put (staying is allowed only when
/// lambda_1 > lambda_2). Matches sequence 1, 0, 1, 1, 4, 10, 35, 120, 455, ...
bigint r_g2(std::int64_t steps);

/// R^{k,1} for SL_n by the hook length formula on ((k-1)/n + 1, (k-1)/n, ...):
/// k! n! / (n + (k-1)/n)! / prod_{i<n-1} ((i + (k-1)/n)!/i!).
/// Throws CongruenceViolated unless k = 1 mod n.
bigint r_sl_via_hook(std::int64_t n, std::int64_t k);

/// R^{k,k} for SL_n as the sum of squared standard-Young-tableau counts over
/// partitions of k with at most n rows.
bigint r_sl_via_syt(std::int64_t n, std::int64_t k);

/// Tightest applicable a-priori upper bound on R^{k,l}:
/// (k+l)! always; (2k-1)!! for k = l outside G_2; per group with s = k+l:
/// Mu exact; Sp: (s-1)!! (0 for s odd); SO: s odd needs s >= n and gives
/// binom(s,n)(s-n-1)!!, s even gives (s-1)!!; SL: floor(s/2)! floor((s-1)/2)!
/// (0 when k != l mod n); G_2: (s!)^{3/4} and 12 * 7^{s-4} for s >= 4.
double r_bound(const Monodromy& g, std::int64_t k, std::int64_t l);

} // namespace charsum
