#include "charsum/exp_sums.hpp"

#include <cmath>

#include "charsum/dft.hpp"

namespace charsum {

cplx gauss_naive(const CharTable& chars, std::int64_t j) {
    const FieldTable& F = chars.field();
    cplx acc{0.0, 0.0};
    for (felem k = 0; k < F.units(); ++k) acc += chars.psi(k) * chars.chi_at_log(j, k);
    return acc;
}

std::vector<cplx> gauss_all(const CharTable& chars) {
    const FieldTable& F = chars.field();
    std::size_t M = static_cast<std::size_t>(F.units());
    std::vector<cplx> x(M);
    for (std::size_t k = 0; k < M; ++k) x[k] = chars.psi(static_cast<felem>(k));
    // G(chi_j) needs the positive-sign transform; with the negative-sign dft
    // that is X[(M - j) mod M].
    std::vector<cplx> X = dft(x);
    std::vector<cplx> out(M);
    out[0] = X[0];
    for (std::size_t j = 1; j < M; ++j) out[j] = X[M - j];
    return out;
}

cplx jacobi_via_gauss(const CharTable& chars, const std::vector<cplx>& gauss,
                      const std::vector<std::int64_t>& js) {
    if (js.size() < 2) throw DomainError("jacobi sums need at least two characters");
    if (gauss.size() != static_cast<std::size_t>(chars.group_order()))
        throw LengthMismatch(gauss.size(), static_cast<std::size_t>(chars.group_order()));
    std::int64_t prod_idx = 0;
    cplx num{1.0, 0.0};
    for (std::int64_t j : js) {
        std::int64_t jn = chars.normalize(j);
        if (jn == 0) throw ProductTrivial();
        prod_idx = chars.normalize(prod_idx + jn);
        num *= gauss[static_cast<std::size_t>(jn)];
    }
    if (prod_idx == 0) throw ProductTrivial();
    num *= std::conj(gauss[static_cast<std::size_t>(prod_idx)]);
    return num / static_cast<double>(chars.field().q());
}

cplx jacobi_via_gauss(const CharTable& chars, const std::vector<std::int64_t>& js) {
    return jacobi_via_gauss(chars, gauss_all(chars), js);
}

cplx jacobi_direct(const CharTable& chars, const std::vector<std::int64_t>& js) {
    if (js.size() < 2) throw DomainError("jacobi sums need at least two characters");
    const FieldTable& F = chars.field();
    std::size_t q = static_cast<std::size_t>(F.q());
    auto values_of = [&](std::int64_t j) {
        std::vector<cplx> f(q, cplx{0.0, 0.0});
        for (felem k = 0; k < F.units(); ++k)
            f[static_cast<std::size_t>(F.index_of(k))] = chars.chi_at_log(j, k);
        return f;
    };
    std::vector<cplx> h = values_of(js[0]);
    for (std::size_t i = 1; i < js.size(); ++i) {
        std::vector<cplx> g = values_of(js[i]);
        std::vector<cplx> next(q, cplx{0.0, 0.0});
        for (std::size_t a = 0; a < q; ++a) {
            if (h[a] == cplx{0.0, 0.0}) continue;
            for (std::size_t b = 0; b < q; ++b) {
                if (g[b] == cplx{0.0, 0.0}) continue;
                std::size_t c = static_cast<std::size_t>(
                    F.index_add(static_cast<std::int32_t>(a), static_cast<std::int32_t>(b)));
                next[c] += h[a] * g[b];
            }
        }
        h = std::move(next);
    }
    return h[1]; // element code 1 is the unit
}

cplx kloosterman_direct(const CharTable& chars, std::int64_t n, felem a) {
    if (n < 1) throw DomainError("Kloosterman order must be >= 1");
    if (a == kZeroElem) throw ZeroArgument();
    const FieldTable& F = chars.field();
    std::size_t M = static_cast<std::size_t>(F.units());
    std::vector<cplx> u(M);
    for (std::size_t k = 0; k < M; ++k) u[k] = chars.psi(static_cast<felem>(k));
    std::vector<cplx> h = u;
    for (std::int64_t step = 1; step < n; ++step) {
        std::vector<cplx> next(M, cplx{0.0, 0.0});
        for (std::size_t s = 0; s < M; ++s)
            for (std::size_t t = 0; t < M; ++t) next[(s + t) % M] += h[s] * u[t];
        h = std::move(next);
    }
    return h[static_cast<std::size_t>(a)];
}

std::vector<cplx> kloosterman_all(const CharTable& chars, std::int64_t n) {
    if (n < 1) throw DomainError("Kloosterman order must be >= 1");
    if (n > 6 || chars.field().q() > 100000)
        throw PrecisionCapExceeded("transform-based Kloosterman values are only certified for n <= 6 and q <= 1e5");
    std::vector<cplx> g = gauss_all(chars);
    for (cplx& z : g) {
        cplx w{1.0, 0.0};
        for (std::int64_t i = 0; i < n; ++i) w *= z;
        z = w;
    }
    std::vector<cplx> out = dft(g);
    double s = 1.0 / static_cast<double>(chars.group_order());
    for (cplx& z : out) z *= s;
    return out;
}

std::vector<double> jacobi_angles(const CharTable& chars, const std::vector<cplx>& gauss,
                                  const std::vector<std::vector<std::int64_t>>& subsets,
                                  std::uint64_t tuple_cap) {
    if (subsets.size() < 2) throw DomainError("jacobi sums need at least two characters");
    if (gauss.size() != static_cast<std::size_t>(chars.group_order()))
        throw LengthMismatch(gauss.size(), static_cast<std::size_t>(chars.group_order()));
    std::int64_t M = chars.group_order();
    std::size_t m = subsets.size();

    std::vector<std::vector<std::int64_t>> norm(m);
    for (std::size_t i = 0; i < m; ++i) {
        norm[i].reserve(subsets[i].size());
        for (std::int64_t j : subsets[i]) {
            std::int64_t jn = chars.normalize(j);
            if (jn == 0) throw DomainError("subsets must hold nontrivial character indices");
            norm[i].push_back(jn);
        }
        if (norm[i].empty()) return {};
    }
    std::uint64_t total = 1;
    for (const auto& s : norm) {
        std::uint64_t n = s.size();
        if (total > tuple_cap / n + 1) {
            throw TupleBudgetExceeded(tuple_cap + 1, tuple_cap);
        }
        total *= n;
    }
    if (total > tuple_cap) throw TupleBudgetExceeded(total, tuple_cap);

    std::vector<double> alpha(static_cast<std::size_t>(M), 0.0);
    for (std::size_t j = 1; j < alpha.size(); ++j) alpha[j] = std::arg(gauss[j]) / two_pi;
    std::vector<std::vector<double>> alpha_of(m);
    for (std::size_t i = 0; i < m; ++i) {
        alpha_of[i].reserve(norm[i].size());
        for (std::int64_t jn : norm[i]) alpha_of[i].push_back(alpha[static_cast<std::size_t>(jn)]);
    }

    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(total));
    // Depth-first over tuple prefixes; the innermost loop costs one index
    // addition, two table reads and a fractional-part reduction per tuple.
    auto rec = [&](auto&& self, std::size_t depth, std::int64_t idx_sum, double alpha_sum) -> void {
        if (depth == m - 1) {
            const std::int64_t* jn = norm[depth].data();
            const double* av = alpha_of[depth].data();
            std::size_t n = norm[depth].size();
            for (std::size_t i = 0; i < n; ++i) {
                std::int64_t prod = idx_sum + jn[i];
                if (prod >= M) prod -= M;
                if (prod == 0) continue;
                double a = alpha_sum + av[i] - alpha[static_cast<std::size_t>(prod)];
                a -= std::floor(a);
                if (a >= 1.0) a -= 1.0;
                out.push_back(a);
            }
            return;
        }
        for (std::size_t i = 0; i < norm[depth].size(); ++i) {
            std::int64_t s = idx_sum + norm[depth][i];
            if (s >= M) s -= M;
            self(self, depth + 1, s, alpha_sum + alpha_of[depth][i]);
        }
    };
    rec(rec, 0, 0, 0.0);
    return out;
}

} // namespace charsum
