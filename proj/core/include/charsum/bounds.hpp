#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "charsum/errors.hpp"
#include "charsum/invariant_dims.hpp"

namespace charsum {

using bigrat = boost::multiprecision::cpp_rational;

/// Upper bounds for the Kloosterman power sums sum_a Kl_n(a)^k conj(Kl_n(a))^l:
///   untwisted: R q^{((n-1)(k+l)+2)/2} + (floor((n^{k+l} - R)/n) + R) q^{((n-1)(k+l)+1)/2}
///   twisted  : floor((n^{k+l} - R)/n) q^{((n-1)(k+l)+1)/2}
/// with R = R^{k,l} for the monodromy group of rank n in characteristic p.
struct KlPowerBounds {
    double untwisted;
    double twisted;
};
KlPowerBounds lemma_kl_rhs(std::int64_t q, std::int64_t n, std::int64_t k, std::int64_t l,
                           const bigint& R);

/// Discrepancy bound for two constrained slots (subset sizes A1, A2 among the
/// q-2 nontrivial characters); minimized over the two orderings of (A1, A2):
///   min{ [2*6^{2/3} A1^{-1/3} q^{1/6} + (A1 A2)^{-1/2} q^{1/2} ln(q)/2](1 + q^{-1/2}/100),
///        4.5 A1^{-2/7} A2^{-1/7} q^{3/14} + 1.1 A1^{-1/2} A2^{-1/4} q^{1/2} ln q }.
double rhs_theorem1(std::int64_t q, std::int64_t A1, std::int64_t A2);

/// Discrepancy bound with k unconstrained slots and first subset of size A1
/// out of m constrained subsets. For k >= 2:
///   min{ 3 q^{-k/(2(k+1))} [1 + (k+1)! q^{-1/6} ln q],
///        3 A1^{-1/(2k+3)} q^{-(2k-1)/(2(2k+3))} [1 + q^{-2/7}(7^k + ((2k+1)!!)^{1/2} ln q)] }
///   / (1 - 2/q)^k;
/// for k = 1: [2 sqrt(3) q^{-1/4} + (3/4) d A1^{-1} (2 + ln q)](1 + 2 q^{-1/2})
/// with d = 0 when m = 1 and d = 1 otherwise.
double rhs_theorem2(std::int64_t q, std::int64_t k, std::int64_t A1, std::int64_t m);

/// Sharper k = 1 bound 3 A1^{-1/5} q^{-1/10} (1 + q^{-1/8} ln q), valid only
/// for A1 >= q^{3/4}; DomainError below that threshold.
double rhs_theorem2_large(std::int64_t q, std::int64_t A1);

/// All slots unconstrained, k >= 2:
///   3 q^{-k/(2(k+1))} [1 + (k+1)! q^{-1/6} ln q] / (1 - 2/q)^k.
double rhs_theorem3(std::int64_t q, std::int64_t k);

/// Moment bound without unconstrained slots (sizes A_1..A_m, m >= 2), n >= 2:
///   (A1 A2)^{1/2} A3...Am min{ [q + (n-1) A2 q^{1/2}]^{1/2},
///                              A2^{1/4} [4q^2 + (n^3+3) q^{3/2}]^{1/4} },
/// minimized over the orderings of (A1, A2); for n = 1:
///   (A1 A2)^{1/2} A3...Am q^{1/2} (1 + 1/(2q)).
double rhs_moment1(std::int64_t q, std::int64_t n, const std::vector<std::int64_t>& sizes);

/// Moment bound with k >= 1 unconstrained slots and subsets of sizes A_1..A_m
/// (m >= 1); n is both the moment order and the Kloosterman rank behind the
/// R-constants (group taken for characteristic p):
///   (k+1) A1...Am q^{k-1-n/2} + A2...Am q^{k/2}
///     min{ A1 n^k + d R^{k,1} (q^{1/2}+1),
///          A1^{1/2} q^{1/4} [n^{2k+1} + R^{k+1,k+1} (q^{1/2}+1)]^{1/2} },
/// d = 0 when m = 1 and d = 1 otherwise.
double rhs_moment2(std::int64_t q, std::int64_t p, std::int64_t n, std::int64_t k,
                   const std::vector<std::int64_t>& sizes);

/// Moment bound with every slot unconstrained (k >= 2):
///   (k+1) q^{k-1-n/2} + q^{k/2} [n^k + R^{k,1} (q^{1/2}+1)].
double rhs_moment3(std::int64_t q, std::int64_t p, std::int64_t n, std::int64_t k);

/// Limit exponent of the two-subset discrepancy: D = q^{-f(x, y) + o(1)} with
/// x, y the log_q subset sizes. Piecewise linear on [0,1]^2, symmetric,
/// evaluated exactly over the rationals. DomainError outside the square.
bigrat f_exponent(const bigrat& x, const bigrat& y);

/// Limit exponent with k unconstrained slots, x = log_q A1. Piecewise linear;
/// the m > 1, k = 1 case has its own three-piece shape. DomainError outside
/// [0, 1] or for k < 1 or m < 1.
bigrat g_exponent(std::int64_t k, std::int64_t m, const bigrat& x);

/// Smallest Erdos-Turan bound over cutoffs K = 1..len(abs_moments):
///   D <= 1/(K+1) + (3/N) sum_{n=1}^K |M(n)| / n,
/// where abs_moments[n-1] = |M(n)| is the n-th absolute power sum of the N
/// unit-circle points. Requires N >= 1 and at least one moment.
struct EtBound {
    double value;
    std::int64_t cutoff;
};
EtBound erdos_turan(const std::vector<double>& abs_moments, std::uint64_t n_points);

/// Exact binary-rational decomposition of a finite double.
bigrat rational_from_double(double x);

} // namespace charsum
