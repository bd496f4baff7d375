#include "charsum/invariant_dims.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>
#include <utility>
#include <vector>

#include "charsum/finite_field.hpp"

namespace charsum {
namespace {

using Partition = std::vector<std::int32_t>;
using Dist = std::map<Partition, bigint>;

// Rows where one box can be added, keeping a partition with <= max_parts parts.
template <typename Fn>
void for_each_add(const Partition& lam, std::size_t max_parts, Fn&& fn) {
    for (std::size_t j = 0; j <= lam.size(); ++j) {
        if (j == lam.size()) {
            if (j < max_parts) {
                Partition mu = lam;
                mu.push_back(1);
                fn(std::move(mu));
            }
        } else if (j == 0 || lam[j - 1] > lam[j]) {
            Partition mu = lam;
            ++mu[j];
            fn(std::move(mu));
        }
    }
}

// Rows where one box can be removed; a part reaching zero is dropped.
template <typename Fn>
void for_each_remove(const Partition& lam, Fn&& fn) {
    for (std::size_t j = 0; j < lam.size(); ++j) {
        std::int32_t below = (j + 1 < lam.size()) ? lam[j + 1] : 0;
        if (lam[j] - 1 >= below) {
            Partition mu = lam;
            --mu[j];
            if (mu[j] == 0) mu.pop_back();
            fn(std::move(mu));
        }
    }
}

bigint dfactorial(std::int64_t s) { // s!! with (-1)!! = 1
    bigint v = 1;
    for (std::int64_t i = s; i >= 2; i -= 2) v *= i;
    return v;
}

bigint factorial(std::int64_t s) {
    bigint v = 1;
    for (std::int64_t i = 2; i <= s; ++i) v *= i;
    return v;
}

bigint binomial(std::int64_t a, std::int64_t b) {
    if (b < 0 || b > a) return 0;
    bigint v = 1;
    for (std::int64_t i = 0; i < b; ++i) {
        v *= a - i;
        v /= i + 1;
    }
    return v;
}

// Standard Young tableaux on lambda, by the hook length formula.
bigint syt_count(const Partition& lam) {
    std::int64_t boxes = 0;
    for (std::int32_t part : lam) boxes += part;
    std::vector<std::int32_t> col_height(lam.empty() ? 0 : static_cast<std::size_t>(lam[0]), 0);
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::int32_t j = 0; j < lam[i]; ++j) ++col_height[static_cast<std::size_t>(j)];
    bigint denom = 1;
    for (std::size_t i = 0; i < lam.size(); ++i)
        for (std::int32_t j = 0; j < lam[i]; ++j)
            denom *= (lam[i] - j) + (col_height[static_cast<std::size_t>(j)] -
                                     static_cast<std::int32_t>(i)) - 1;
    return factorial(boxes) / denom;
}

} // namespace

Monodromy group_for(std::int64_t p, std::int64_t n) {
    if (n < 1 || !is_prime(p)) throw Unclassified(p, n);
    if (n == 1) return {Group::Mu, n, p};
    if (n % 2 == 0) return {Group::Sp, n, p};
    if (p >= 3) return {Group::Sl, n, p};
    if (n == 7) return {Group::G2, n, p};
    return {Group::So, n, p};
}

bigint r_mu(std::int64_t p, std::int64_t k, std::int64_t l) {
    if (p < 1) throw DomainError("characteristic must be positive");
    return (k - l) % p == 0 ? 1 : 0;
}

bigint r_sp(std::int64_t n, std::int64_t steps) {
    if (n < 2 || n % 2 != 0) throw DomainError("Sp rank must be even and >= 2");
    if (steps < 0) throw DomainError("walk length must be >= 0");
    std::size_t max_parts = static_cast<std::size_t>(n / 2);
    Dist cur{{Partition{}, 1}};
    for (std::int64_t s = 0; s < steps; ++s) {
        Dist next;
        for (const auto& [lam, ways] : cur) {
            for_each_add(lam, max_parts, [&](Partition mu) { next[std::move(mu)] += ways; });
            for_each_remove(lam, [&](Partition mu) { next[std::move(mu)] += ways; });
        }
        cur = std::move(next);
    }
    auto it = cur.find(Partition{});
    return it == cur.end() ? bigint(0) : it->second;
}

bigint r_so(std::int64_t n, std::int64_t steps) {
    if (n < 3 || n % 2 == 0) throw DomainError("SO rank must be odd and >= 3");
    if (steps < 0) throw DomainError("walk length must be >= 0");
    auto admissible = [&](const Partition& lam) {
        std::int64_t col1 = static_cast<std::int64_t>(lam.size());
        std::int64_t col2 = 0;
        for (std::int32_t part : lam) col2 += part >= 2 ? 1 : 0;
        return col1 + col2 <= n;
    };
    Dist cur{{Partition{}, 1}};
    for (std::int64_t s = 0; s < steps; ++s) {
        Dist next;
        for (const auto& [lam, ways] : cur) {
            auto push = [&](Partition mu) {
                if (admissible(mu)) next[std::move(mu)] += ways;
            };
            for_each_add(lam, static_cast<std::size_t>(n), push);
            for_each_remove(lam, push);
        }
        cur = std::move(next);
    }
    Partition target;
    if (steps % 2 != 0) target.assign(static_cast<std::size_t>(n), 1);
    auto it = cur.find(target);
    return it == cur.end() ? bigint(0) : it->second;
}

bigint r_sl(std::int64_t n, std::int64_t k, std::int64_t l) {
    if (n < 2) throw DomainError("SL rank must be >= 2");
    if (k < 0 || l < 0) throw DomainError("walk length must be >= 0");
    if ((k - l) % n != 0) return 0;
    std::size_t np = static_cast<std::size_t>(n);
    Dist cur{{Partition{}, 1}};
    for (std::int64_t s = 0; s < k; ++s) {
        Dist next;
        for (const auto& [lam, ways] : cur) {
            Partition nu = lam;
            nu.resize(np, 0);
            for (std::int32_t& part : nu) ++part;
            for_each_remove(nu, [&](Partition mu) { next[std::move(mu)] += ways; });
        }
        cur = std::move(next);
    }
    for (std::int64_t s = 0; s < l; ++s) {
        Dist next;
        for (const auto& [lam, ways] : cur)
            for_each_add(lam, np, [&](Partition mu) { next[std::move(mu)] += ways; });
        cur = std::move(next);
    }
    std::int64_t width = (k * (n - 1) + l) / n;
    Partition target;
    if (width > 0) target.assign(np, static_cast<std::int32_t>(width));
    auto it = cur.find(target);
    return it == cur.end() ? bigint(0) : it->second;
}

bigint r_g2(std::int64_t steps) {
    if (steps < 0) throw DomainError("walk length must be >= 0");
    using State = std::pair<std::int32_t, std::int32_t>;
    std::map<State, bigint> cur{{{0, 0}, 1}};
    for (std::int64_t s = 0; s < steps; ++s) {
        std::map<State, bigint> next;
        for (const auto& [st, ways] : cur) {
            auto [a, b] = st;
            auto push = [&](std::int32_t a2, std::int32_t b2) {
                if (a2 >= b2 && b2 >= 0) next[{a2, b2}] += ways;
            };
            push(a + 1, b);
            push(a, b + 1);
            push(a - 1, b);
            push(a, b - 1);
            push(a + 1, b - 1);
            push(a - 1, b + 1);
            if (a > b) push(a, b);
        }
        cur = std::move(next);
    }
    auto it = cur.find({0, 0});
    return it == cur.end() ? bigint(0) : it->second;
}

bigint r_lookup(const Monodromy& g, std::int64_t k, std::int64_t l) {
    if (k < 0 || l < 0) throw DomainError("tensor exponents must be >= 0");
    static std::mutex mu;
    static std::map<std::tuple<Group, std::int64_t, std::int64_t, std::int64_t, std::int64_t>, bigint>
        cache;
    auto key = std::make_tuple(g.group, g.n, g.p, k, l);
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
    }
    bigint value;
    switch (g.group) {
    case Group::Mu: value = r_mu(g.p, k, l); break;
    case Group::Sp: value = r_sp(g.n, k + l); break;
    case Group::So: value = r_so(g.n, k + l); break;
    case Group::Sl: value = r_sl(g.n, k, l); break;
    case Group::G2: value = r_g2(k + l); break;
    }
    std::lock_guard<std::mutex> lock(mu);
    return cache.emplace(key, std::move(value)).first->second;
}

bigint r_sl_via_hook(std::int64_t n, std::int64_t k) {
    if (n < 2 || k < 1) throw DomainError("need n >= 2 and k >= 1");
    if ((k - 1) % n != 0)
        throw CongruenceViolated("hook evaluation needs k = 1 mod n, got k = " + std::to_string(k) +
                                 ", n = " + std::to_string(n));
    std::int64_t c = (k - 1) / n;
    bigint denom = factorial(n + c) / factorial(n);
    for (std::int64_t i = 0; i <= n - 2; ++i) denom *= factorial(i + c) / factorial(i);
    return factorial(k) / denom;
}

bigint r_sl_via_syt(std::int64_t n, std::int64_t k) {
    if (n < 2 || k < 0) throw DomainError("need n >= 2 and k >= 0");
    bigint total = 0;
    Partition lam;
    // Enumerate partitions of k with at most n parts.
    auto rec = [&](auto&& self, std::int64_t remaining, std::int32_t max_part) -> void {
        if (remaining == 0) {
            bigint f = syt_count(lam);
            total += f * f;
            return;
        }
        if (static_cast<std::int64_t>(lam.size()) == n) return;
        for (std::int32_t part = std::min<std::int64_t>(max_part, remaining); part >= 1; --part) {
            lam.push_back(part);
            self(self, remaining - part, part);
            lam.pop_back();
        }
    };
    rec(rec, k, static_cast<std::int32_t>(std::min<std::int64_t>(k, INT32_MAX)));
    return total;
}

double r_bound(const Monodromy& g, std::int64_t k, std::int64_t l) {
    std::int64_t s = k + l;
    double best = static_cast<double>(factorial(s));
    if (g.group != Group::G2 && k == l)
        best = std::min(best, static_cast<double>(dfactorial(2 * k - 1)));
    switch (g.group) {
    case Group::Mu:
        best = std::min(best, static_cast<double>(r_mu(g.p, k, l)));
        break;
    case Group::Sp:
        best = std::min(best, s % 2 != 0 ? 0.0 : static_cast<double>(dfactorial(s - 1)));
        break;
    case Group::So:
        if (s % 2 != 0)
            best = std::min(best, s < g.n ? 0.0
                                          : static_cast<double>(binomial(s, g.n) *
                                                                dfactorial(s - g.n - 1)));
        else
            best = std::min(best, static_cast<double>(dfactorial(s - 1)));
        break;
    case Group::Sl:
        if ((k - l) % g.n != 0) best = 0.0;
        best = std::min(best, static_cast<double>(factorial(s / 2) * factorial((s - 1) / 2)));
        break;
    case Group::G2:
        best = std::min(best, std::pow(static_cast<double>(factorial(s)), 0.75));
        if (s >= 4) best = std::min(best, 12.0 * std::pow(7.0, static_cast<double>(s - 4)));
        break;
    }
    return best;
}

} // namespace charsum
