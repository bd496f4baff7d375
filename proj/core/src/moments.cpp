#include "charsum/moments.hpp"

#include <cmath>

#include "charsum/dft.hpp"

namespace charsum {
namespace {

// (G_j / sqrt q)^n for every j; unit modulus away from j = 0.
std::vector<cplx> normalized_gauss_powers(const CharTable& chars, const std::vector<cplx>& gauss,
                                          std::int64_t n) {
    if (gauss.size() != static_cast<std::size_t>(chars.group_order()))
        throw LengthMismatch(gauss.size(), static_cast<std::size_t>(chars.group_order()));
    double root = std::sqrt(static_cast<double>(chars.field().q()));
    std::vector<cplx> u(gauss.size());
    for (std::size_t j = 0; j < gauss.size(); ++j) {
        cplx base = gauss[j] / root;
        cplx w{1.0, 0.0};
        for (std::int64_t i = 0; i < n; ++i) w *= base;
        u[j] = w;
    }
    return u;
}

void check_moment_args(const CharTable& chars, const std::vector<std::vector<std::int64_t>>& subsets,
                       std::int64_t k_extra, std::int64_t n) {
    if (k_extra < 0) throw DomainError("number of unconstrained slots must be >= 0");
    if (n < 1) throw DomainError("moment order must be >= 1");
    std::int64_t s = static_cast<std::int64_t>(subsets.size()) + k_extra;
    if (s < 2) throw DomainError("moments need at least two character slots");
    for (const auto& sub : subsets)
        for (std::int64_t j : sub)
            if (chars.is_trivial(j)) throw DomainError("subsets must hold nontrivial character indices");
    double q = static_cast<double>(chars.field().q());
    double bits = static_cast<double>(s) *
                  (std::log2(static_cast<double>(chars.group_order())) +
                   static_cast<double>(n) / 2.0 * std::log2(q));
    if (bits >= 1000.0)
        throw PrecisionCapExceeded("moment terms would outrange doubles at this order");
}

} // namespace

cplx moment(const CharTable& chars, const std::vector<cplx>& gauss,
            const std::vector<std::vector<std::int64_t>>& subsets, std::int64_t k_extra,
            std::int64_t n) {
    check_moment_args(chars, subsets, k_extra, n);
    std::size_t M = static_cast<std::size_t>(chars.group_order());
    std::vector<cplx> u = normalized_gauss_powers(chars, gauss, n);

    std::vector<cplx> conv;
    auto fold = [&](const std::vector<cplx>& f) {
        conv = conv.empty() ? f : cyclic_convolve(conv, f);
    };
    for (const auto& sub : subsets) {
        std::vector<cplx> f(M, cplx{0.0, 0.0});
        for (std::int64_t j : sub) {
            std::size_t jn = static_cast<std::size_t>(chars.normalize(j));
            f[jn] = u[jn];
        }
        fold(f);
    }
    if (k_extra > 0) {
        std::vector<cplx> f(u);
        f[0] = cplx{0.0, 0.0};
        for (std::int64_t i = 0; i < k_extra; ++i) fold(f);
    }

    cplx acc{0.0, 0.0};
    for (std::size_t rho = 1; rho < M; ++rho) acc += conv[rho] * std::conj(u[rho]);
    return acc;
}

cplx moment_brute(const CharTable& chars, const std::vector<cplx>& gauss,
                  const std::vector<std::vector<std::int64_t>>& subsets, std::int64_t k_extra,
                  std::int64_t n) {
    check_moment_args(chars, subsets, k_extra, n);
    std::int64_t M = chars.group_order();
    std::vector<cplx> u = normalized_gauss_powers(chars, gauss, n);

    std::vector<std::vector<std::int64_t>> slots;
    for (const auto& sub : subsets) {
        std::vector<std::int64_t> v;
        v.reserve(sub.size());
        for (std::int64_t j : sub) v.push_back(chars.normalize(j));
        slots.push_back(std::move(v));
    }
    std::vector<std::int64_t> all;
    for (std::int64_t j = 1; j < M; ++j) all.push_back(j);
    for (std::int64_t i = 0; i < k_extra; ++i) slots.push_back(all);

    cplx acc{0.0, 0.0};
    auto rec = [&](auto&& self, std::size_t depth, std::int64_t idx_sum, cplx prod) -> void {
        if (depth == slots.size()) {
            if (idx_sum != 0) acc += prod * std::conj(u[static_cast<std::size_t>(idx_sum)]);
            return;
        }
        for (std::int64_t j : slots[depth]) {
            std::int64_t s = idx_sum + j;
            if (s >= M) s -= M;
            self(self, depth + 1, s, prod * u[static_cast<std::size_t>(j)]);
        }
    };
    rec(rec, 0, 0, cplx{1.0, 0.0});
    return acc;
}

cplx kloosterman_power_sum(const std::vector<cplx>& kl, std::int64_t k, std::int64_t l) {
    if (k < 0 || l < 0) throw DomainError("powers must be >= 0");
    cplx acc{0.0, 0.0};
    for (cplx v : kl) {
        cplx term{1.0, 0.0};
        for (std::int64_t i = 0; i < k; ++i) term *= v;
        cplx vc = std::conj(v);
        for (std::int64_t i = 0; i < l; ++i) term *= vc;
        acc += term;
    }
    return acc;
}

cplx kloosterman_power_sum_twisted(const CharTable& chars, const std::vector<cplx>& kl,
                                   std::int64_t k, std::int64_t l, std::int64_t twist) {
    if (k < 0 || l < 0) throw DomainError("powers must be >= 0");
    if (chars.is_trivial(twist)) throw TrivialTwist();
    if (kl.size() != static_cast<std::size_t>(chars.group_order()))
        throw LengthMismatch(kl.size(), static_cast<std::size_t>(chars.group_order()));
    cplx acc{0.0, 0.0};
    for (std::size_t t = 0; t < kl.size(); ++t) {
        cplx term = chars.chi_at_log(twist, static_cast<std::int64_t>(t));
        for (std::int64_t i = 0; i < k; ++i) term *= kl[t];
        cplx vc = std::conj(kl[t]);
        for (std::int64_t i = 0; i < l; ++i) term *= vc;
        acc += term;
    }
    return acc;
}

} // namespace charsum
