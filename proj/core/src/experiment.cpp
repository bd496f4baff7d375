#include "charsum/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "charsum/bounds.hpp"
#include "charsum/characters.hpp"
#include "charsum/discrepancy.hpp"
#include "charsum/errors.hpp"
#include "charsum/exp_sums.hpp"
#include "charsum/finite_field.hpp"
#include "charsum/invariant_dims.hpp"
#include "charsum/moments.hpp"

namespace charsum {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

// Keep free-form text CSV-safe: fields are comma-separated, rows line-separated.
std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',') c = ';';
        if (c == '\n' || c == '\r') c = ' ';
    }
    return s;
}

[[noreturn]] void bad_config(const std::string& why) { throw ConfigInvalid(why); }

void check_keys(const json& j, const char* where, std::initializer_list<const char*> allowed) {
    for (const auto& el : j.items()) {
        bool known = false;
        for (const char* a : allowed)
            if (el.key() == a) known = true;
        if (!known) bad_config("unknown key \"" + el.key() + "\" in " + where);
    }
}

std::int64_t int_field(const json& j, const char* key, std::int64_t fallback, std::int64_t lo,
                       std::int64_t hi) {
    if (!j.contains(key)) return fallback;
    const json& v = j.at(key);
    if (!v.is_number_integer()) bad_config(std::string(key) + " must be an integer");
    std::int64_t x = v.get<std::int64_t>();
    if (x < lo || x > hi)
        bad_config(std::string(key) + " must lie in [" + std::to_string(lo) + ", " +
                   std::to_string(hi) + "]");
    return x;
}

std::uint64_t mul_sat(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > std::numeric_limits<std::uint64_t>::max() / b)
        return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// One family of character subsets: the m constrained slots plus k_extra
// full slots, with the per-slot sizes and the saturated tuple count.
struct Family {
    std::vector<std::vector<std::int64_t>> member_slots;
    std::vector<std::vector<std::int64_t>> all_slots;
    std::vector<std::int64_t> slot_sizes;
    std::string sizes_str;
    std::uint64_t tuples = 0;
    bool all_full = false;
};

std::string join_sizes(const std::vector<std::int64_t>& sizes) {
    std::string s;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(sizes[i]);
    }
    return s;
}

std::vector<std::int64_t> full_index_list(std::int64_t q) {
    std::vector<std::int64_t> full(static_cast<std::size_t>(q - 2));
    for (std::int64_t j = 1; j <= q - 2; ++j) full[static_cast<std::size_t>(j - 1)] = j;
    return full;
}

std::vector<std::int64_t> resolved_sizes(const ExperimentConfig& cfg, std::int64_t q) {
    std::vector<std::int64_t> sizes = cfg.sizes;
    for (double f : cfg.sizes_frac) {
        auto s = static_cast<std::int64_t>(std::ceil(static_cast<double>(q - 2) * f));
        sizes.push_back(std::clamp<std::int64_t>(s, 1, q - 2));
    }
    std::sort(sizes.begin(), sizes.end());
    sizes.erase(std::unique(sizes.begin(), sizes.end()), sizes.end());
    return sizes;
}

std::vector<Family> build_families(const ExperimentConfig& cfg, std::int64_t q,
                                   std::uint64_t seed, bool with_extras) {
    std::vector<std::int64_t> full = full_index_list(q);
    std::vector<Family> families;

    auto finish = [&](std::vector<std::vector<std::int64_t>> members) {
        Family fam;
        fam.member_slots = std::move(members);
        fam.all_slots = fam.member_slots;
        if (with_extras)
            for (std::int64_t i = 0; i < cfg.k_extra; ++i) fam.all_slots.push_back(full);
        fam.tuples = 1;
        fam.all_full = true;
        for (const auto& slot : fam.all_slots) {
            fam.slot_sizes.push_back(static_cast<std::int64_t>(slot.size()));
            fam.tuples = mul_sat(fam.tuples, slot.size());
        }
        for (const auto& slot : fam.member_slots)
            if (static_cast<std::int64_t>(slot.size()) != q - 2) fam.all_full = false;
        fam.sizes_str = join_sizes(fam.slot_sizes);
        families.push_back(std::move(fam));
    };

    switch (cfg.policy) {
    case SubsetPolicy::kFull:
        finish(std::vector<std::vector<std::int64_t>>(static_cast<std::size_t>(cfg.m), full));
        break;
    case SubsetPolicy::kRandom:
        for (std::int64_t size : resolved_sizes(cfg, q)) {
            std::vector<std::vector<std::int64_t>> members;
            for (std::int64_t i = 0; i < cfg.m; ++i)
                members.push_back(random_subset(q - 2, size,
                                                slot_seed(seed, static_cast<std::size_t>(i))));
            finish(std::move(members));
        }
        break;
    case SubsetPolicy::kExplicit: {
        std::vector<std::vector<std::int64_t>> members;
        for (const auto& list : cfg.explicit_lists) {
            std::vector<std::int64_t> slot;
            for (std::int64_t j : list) {
                std::int64_t norm = ((j % (q - 1)) + (q - 1)) % (q - 1);
                if (norm == 0) throw DomainError("explicit subset contains the trivial character");
                slot.push_back(norm);
            }
            std::sort(slot.begin(), slot.end());
            slot.erase(std::unique(slot.begin(), slot.end()), slot.end());
            members.push_back(std::move(slot));
        }
        finish(std::move(members));
        break;
    }
    }
    return families;
}

ResultRow base_row(const std::string& suite, std::int64_t q, std::uint64_t seed) {
    ResultRow r;
    r.suite = suite;
    r.q = q;
    r.seed = seed;
    return r;
}

ResultRow error_row(const std::string& suite, std::int64_t q, std::uint64_t seed,
                    const std::string& item, const std::exception& e) {
    ResultRow r = base_row(suite, q, seed);
    r.item = item;
    r.pass = false;
    r.status = sanitize(std::string("error:") + e.what());
    return r;
}

cplx gauss_kahan(const CharTable& chars, std::int64_t j) {
    KahanSum acc;
    for (std::int64_t t = 0; t < chars.group_order(); ++t)
        acc.add(chars.psi(static_cast<felem>(t)) * chars.chi_at_log(j, t));
    return acc.value();
}

void suite_gauss(std::vector<ResultRow>& out, const ExperimentConfig& cfg, const CharTable& chars,
                 const std::vector<cplx>& gauss, std::int64_t q) {
    double sq = std::sqrt(static_cast<double>(q));
    for (std::int64_t j = 1; j <= q - 2; ++j) {
        ResultRow r = base_row("gauss", q, 0);
        r.item = "chi:" + std::to_string(j);
        r.n = j;
        r.measured = cfg.compensated_summation ? gauss_kahan(chars, j)
                                               : gauss[static_cast<std::size_t>(j)];
        r.bound = sq;
        r.pass = std::abs(std::abs(r.measured) - sq) <= 1e-8 * sq;
        out.push_back(std::move(r));
    }
    ResultRow r = base_row("gauss", q, 0);
    r.item = "chi:0";
    r.measured = cfg.compensated_summation ? gauss_kahan(chars, 0) : gauss[0];
    r.bound = 1.0;
    r.pass = std::abs(r.measured - cplx{-1.0, 0.0}) <= 1e-10;
    out.push_back(std::move(r));
}

void suite_jacobi(std::vector<ResultRow>& out, const ExperimentConfig& cfg, const CharTable& chars,
                  const std::vector<cplx>& gauss, std::int64_t q, std::uint64_t seed) {
    std::int64_t M = q - 1;
    double bound = std::pow(static_cast<double>(q), static_cast<double>(cfg.m - 1) / 2.0);
    for (const Family& fam : build_families(cfg, q, seed, /*with_extras=*/false)) {
        std::uint64_t cap = std::min(cfg.tuple_budget, cfg.row_cap);
        if (fam.tuples > cap) {
            ResultRow r = base_row("jacobi", q, seed);
            r.item = "family";
            r.m = cfg.m;
            r.sizes = fam.sizes_str;
            r.status = fam.tuples > cfg.tuple_budget ? "skipped:tuple-budget" : "skipped:row-cap";
            out.push_back(std::move(r));
            continue;
        }
        auto t0 = Clock::now();
        std::vector<ResultRow> rows;
        std::vector<std::int64_t> js(static_cast<std::size_t>(cfg.m));
        auto rec = [&](auto&& self, std::size_t depth, std::int64_t idx_sum) -> void {
            if (depth == fam.member_slots.size()) {
                if (idx_sum % M == 0) return;
                ResultRow r = base_row("jacobi", q, seed);
                r.item = "chis:";
                for (std::size_t i = 0; i < js.size(); ++i) {
                    if (i) r.item += ';';
                    r.item += std::to_string(js[i]);
                }
                r.m = cfg.m;
                r.sizes = fam.sizes_str;
                r.measured = jacobi_via_gauss(chars, gauss, js);
                r.bound = bound;
                r.pass = std::abs(std::abs(r.measured) - bound) <= 1e-7 * bound;
                rows.push_back(std::move(r));
                return;
            }
            for (std::int64_t j : fam.member_slots[depth]) {
                js[depth] = j;
                self(self, depth + 1, idx_sum + j);
            }
        };
        rec(rec, 0, 0);
        double el = ms_since(t0);
        for (ResultRow& r : rows) r.wall_ms = el;
        out.insert(out.end(), std::make_move_iterator(rows.begin()),
                   std::make_move_iterator(rows.end()));
    }
}

void suite_kloosterman(std::vector<ResultRow>& out, const ExperimentConfig& cfg,
                       const CharTable& chars, std::int64_t q) {
    for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
        auto t0 = Clock::now();
        std::vector<cplx> kl;
        try {
            kl = kloosterman_all(chars, n);
        } catch (const std::exception& e) {
            out.push_back(error_row("kloosterman", q, 0, "n:" + std::to_string(n), e));
            continue;
        }
        double el = ms_since(t0);
        // Purity: Kl_n(a) is a sum of n Frobenius eigenvalues of modulus
        // q^{(n-1)/2}.
        double bound = static_cast<double>(n) *
                       std::pow(static_cast<double>(q), static_cast<double>(n - 1) / 2.0);
        for (std::int64_t t = 0; t < q - 1; ++t) {
            ResultRow r = base_row("kloosterman", q, 0);
            r.item = "log:" + std::to_string(t);
            r.n = n;
            r.measured = kl[static_cast<std::size_t>(t)];
            r.bound = bound;
            r.pass = std::abs(r.measured) <= bound * (1 + 1e-12) + 1e-9;
            r.wall_ms = el;
            out.push_back(std::move(r));
        }
    }
}

void suite_lemma_kl(std::vector<ResultRow>& out, const ExperimentConfig& cfg,
                    const CharTable& chars, std::int64_t p, std::int64_t q) {
    for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
        std::vector<cplx> kl;
        try {
            kl = kloosterman_all(chars, n);
        } catch (const std::exception& e) {
            out.push_back(error_row("lemma-kl", q, 0, "n:" + std::to_string(n), e));
            continue;
        }
        Monodromy g = group_for(p, n);
        for (std::int64_t k = 0; k <= 6; ++k) {
            for (std::int64_t l = 0; l <= k && k + l <= 6; ++l) {
                if (k + l < 1) continue;
                bigint R = r_lookup(g, k, l);
                KlPowerBounds b = lemma_kl_rhs(q, n, k, l, R);
                std::string tag = "k:" + std::to_string(k) + ";l:" + std::to_string(l);
                auto t0 = Clock::now();

                ResultRow plain = base_row("lemma-kl", q, 0);
                plain.item = tag + ";plain";
                plain.k = k;
                plain.n = n;
                plain.measured = kloosterman_power_sum(kl, k, l);
                plain.bound = b.untwisted;
                plain.pass = std::abs(plain.measured) <= b.untwisted * (1 + 1e-9) + 1e-6;

                ResultRow twisted = base_row("lemma-kl", q, 0);
                twisted.item = tag + ";twist:1";
                twisted.k = k;
                twisted.n = n;
                twisted.measured = kloosterman_power_sum_twisted(chars, kl, k, l, 1);
                twisted.bound = b.twisted;
                twisted.pass = std::abs(twisted.measured) <= b.twisted * (1 + 1e-9) + 1e-6;

                double el = ms_since(t0);
                plain.wall_ms = el;
                twisted.wall_ms = el;
                out.push_back(std::move(plain));
                out.push_back(std::move(twisted));
            }
        }
    }
}

bool theorem2_large_applies(std::int64_t q, std::int64_t a1) {
    bigint lhs = bigint(a1) * a1 * a1 * a1;
    bigint rhs = bigint(q) * q * q;
    return lhs >= rhs;
}

void suite_discrepancy(std::vector<ResultRow>& out, const ExperimentConfig& cfg,
                       const CharTable& chars, const std::vector<cplx>& gauss, std::int64_t q,
                       std::uint64_t seed) {
    for (const Family& fam : build_families(cfg, q, seed, /*with_extras=*/true)) {
        if (fam.tuples > cfg.tuple_budget) {
            ResultRow r = base_row("discrepancy", q, seed);
            r.item = "family";
            r.m = cfg.m;
            r.k = cfg.k_extra;
            r.sizes = fam.sizes_str;
            r.status = "skipped:tuple-budget";
            out.push_back(std::move(r));
            continue;
        }
        auto t0 = Clock::now();
        DiscrepancyResult res;
        try {
            res = discrepancy_exact(jacobi_angles(chars, gauss, fam.all_slots, cfg.tuple_budget));
        } catch (const std::exception& e) {
            out.push_back(error_row("discrepancy", q, seed, "family", e));
            continue;
        }
        double el = ms_since(t0);

        auto emit = [&](const char* item, double bound) {
            ResultRow r = base_row("discrepancy", q, seed);
            r.item = item;
            r.m = cfg.m;
            r.k = cfg.k_extra;
            r.n = static_cast<std::int64_t>(res.n);
            r.sizes = fam.sizes_str;
            r.measured = {res.value, 0.0};
            r.bound = bound;
            r.pass = res.value <= bound + 1e-12;
            r.wall_ms = el;
            out.push_back(std::move(r));
        };

        if (cfg.k_extra == 0) {
            emit("t1", rhs_theorem1(q, fam.slot_sizes[0], fam.slot_sizes[1]));
        } else {
            double b2 = rhs_theorem2(q, cfg.k_extra, fam.slot_sizes[0], cfg.m);
            if (cfg.k_extra == 1 && theorem2_large_applies(q, fam.slot_sizes[0]))
                b2 = std::min(b2, rhs_theorem2_large(q, fam.slot_sizes[0]));
            emit("t2", b2);
        }
        if (fam.all_full && cfg.m + cfg.k_extra >= 2)
            emit("t3", rhs_theorem3(q, cfg.m + cfg.k_extra));
    }
}

void suite_moments(std::vector<ResultRow>& out, const ExperimentConfig& cfg,
                   const CharTable& chars, const std::vector<cplx>& gauss, std::int64_t p,
                   std::int64_t q, std::uint64_t seed) {
    for (const Family& fam : build_families(cfg, q, seed, /*with_extras=*/true)) {
        std::vector<std::int64_t> member_sizes(fam.slot_sizes.begin(),
                                               fam.slot_sizes.begin() + cfg.m);
        for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
            auto t0 = Clock::now();
            cplx M;
            try {
                M = moment(chars, gauss, fam.member_slots, cfg.k_extra, n);
            } catch (const std::exception& e) {
                out.push_back(error_row("moments", q, seed, "n:" + std::to_string(n), e));
                continue;
            }
            double el = ms_since(t0);

            auto emit = [&](const char* item, double bound) {
                ResultRow r = base_row("moments", q, seed);
                r.item = item;
                r.m = cfg.m;
                r.k = cfg.k_extra;
                r.n = n;
                r.sizes = fam.sizes_str;
                r.measured = M;
                r.bound = bound;
                r.pass = std::abs(M) <= bound * (1 + 1e-9) + 1e-9;
                r.wall_ms = el;
                out.push_back(std::move(r));
            };

            emit("m1", rhs_moment1(q, n, fam.slot_sizes));
            if (cfg.k_extra >= 1) emit("m2", rhs_moment2(q, p, n, cfg.k_extra, member_sizes));
            if (fam.all_full && cfg.m + cfg.k_extra >= 2)
                emit("m3", rhs_moment3(q, p, n, cfg.m + cfg.k_extra));
        }
    }
}

void suite_bounds(std::vector<ResultRow>& out, const ExperimentConfig& cfg, std::int64_t p,
                  std::int64_t q) {
    for (const Family& fam : build_families(cfg, q, 0, /*with_extras=*/true)) {
        auto emit = [&](const std::string& item, std::int64_t n, double value) {
            ResultRow r = base_row("bounds", q, 0);
            r.item = item;
            r.m = cfg.m;
            r.k = cfg.k_extra;
            r.n = n;
            r.sizes = fam.sizes_str;
            r.measured = {value, 0.0};
            r.bound = value;
            out.push_back(std::move(r));
        };
        std::int64_t s0 = fam.slot_sizes[0];
        std::int64_t total = cfg.m + cfg.k_extra;

        if (total >= 2 && cfg.k_extra == 0) emit("t1", 0, rhs_theorem1(q, s0, fam.slot_sizes[1]));
        if (cfg.k_extra >= 1) {
            emit("t2", 0, rhs_theorem2(q, cfg.k_extra, s0, cfg.m));
            if (cfg.k_extra == 1 && theorem2_large_applies(q, s0))
                emit("t2-large", 0, rhs_theorem2_large(q, s0));
        }
        if (fam.all_full && total >= 2) emit("t3", 0, rhs_theorem3(q, total));

        for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
            std::vector<std::int64_t> member_sizes(fam.slot_sizes.begin(),
                                                   fam.slot_sizes.begin() + cfg.m);
            if (total >= 2) emit("m1", n, rhs_moment1(q, n, fam.slot_sizes));
            if (cfg.k_extra >= 1) emit("m2", n, rhs_moment2(q, p, n, cfg.k_extra, member_sizes));
            if (fam.all_full && total >= 2) emit("m3", n, rhs_moment3(q, p, n, total));
        }

        double lq = std::log(static_cast<double>(q));
        bigrat x0 = rational_from_double(std::log(static_cast<double>(s0)) / lq);
        if (total >= 2 && cfg.k_extra == 0) {
            bigrat x1 =
                rational_from_double(std::log(static_cast<double>(fam.slot_sizes[1])) / lq);
            emit("f", 0, f_exponent(x0, x1).convert_to<double>());
        }
        if (cfg.k_extra >= 1)
            emit("g", 0, g_exponent(cfg.k_extra, cfg.m, x0).convert_to<double>());
    }
}

std::string group_label(const Monodromy& g) {
    switch (g.group) {
    case Group::Mu: return "mu" + std::to_string(g.p);
    case Group::Sp: return "sp" + std::to_string(g.n);
    case Group::Sl: return "sl" + std::to_string(g.n);
    case Group::So: return "so" + std::to_string(g.n);
    case Group::G2: return "g2";
    }
    return "?";
}

void suite_rconsts(std::vector<ResultRow>& out, const ExperimentConfig& cfg, std::int64_t p,
                   std::int64_t q) {
    for (std::int64_t n = 1; n <= cfg.n_max; ++n) {
        Monodromy g = group_for(p, n);
        std::string label = group_label(g);
        for (std::int64_t k = 0; k <= 6; ++k) {
            for (std::int64_t l = 0; l <= k && k + l <= 6; ++l) {
                if (k + l < 1) continue;
                ResultRow r = base_row("rconsts", q, 0);
                r.item = label + ";k:" + std::to_string(k) + ";l:" + std::to_string(l);
                r.k = k;
                r.n = n;
                bigint R = r_lookup(g, k, l);
                r.measured = {R.convert_to<double>(), 0.0};
                r.bound = r_bound(g, k, l);
                r.pass = r.measured.real() <= r.bound + 0.5;
                out.push_back(std::move(r));
            }
        }
    }
}

struct Task {
    std::string suite;
    std::int64_t q = 0;
    std::uint64_t seed = 0;
};

bool suite_uses_seeds(const std::string& s) {
    return s == "jacobi" || s == "discrepancy" || s == "moments";
}

bool suite_uses_tables(const std::string& s) { return s != "bounds" && s != "rconsts"; }

std::vector<ResultRow> run_task(const Task& t, const ExperimentConfig& cfg) {
    std::vector<ResultRow> out;
    try {
        std::int64_t p = factor_prime_power(t.q).p;
        if (!suite_uses_tables(t.suite)) {
            if (t.suite == "bounds") suite_bounds(out, cfg, p, t.q);
            else suite_rconsts(out, cfg, p, t.q);
            return out;
        }
        FieldTable field(t.q);
        CharTable chars(field);
        std::vector<cplx> gauss = gauss_all(chars);
        if (t.suite == "gauss") suite_gauss(out, cfg, chars, gauss, t.q);
        else if (t.suite == "jacobi") suite_jacobi(out, cfg, chars, gauss, t.q, t.seed);
        else if (t.suite == "kloosterman") suite_kloosterman(out, cfg, chars, t.q);
        else if (t.suite == "lemma-kl") suite_lemma_kl(out, cfg, chars, p, t.q);
        else if (t.suite == "discrepancy") suite_discrepancy(out, cfg, chars, gauss, t.q, t.seed);
        else if (t.suite == "moments") suite_moments(out, cfg, chars, gauss, p, t.q, t.seed);
    } catch (const std::exception& e) {
        out.push_back(error_row(t.suite, t.q, t.seed, "task", e));
    }
    return out;
}

int decide_threads(const ExperimentConfig& cfg, std::size_t ntasks) {
    long n = 0;
    if (const char* env = std::getenv("CHARSUM_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) n = v;
    }
    if (n == 0 && cfg.threads > 0) n = cfg.threads;
    if (n == 0) {
        unsigned hc = std::thread::hardware_concurrency();
        n = hc ? static_cast<long>(hc) : 1;
    }
    n = std::min<long>(n, static_cast<long>(ntasks));
    return static_cast<int>(std::max<long>(n, 1));
}

} // namespace

// Distinct slots of one family get distinct derived seeds so equal-size slots
// are independent draws; the stride keeps families of adjacent seeds apart.
std::uint64_t slot_seed(std::uint64_t family_seed, std::size_t slot) {
    return family_seed * 1000003ULL + static_cast<std::uint64_t>(slot);
}

const std::vector<std::string>& ExperimentConfig::suite_names() {
    static const std::vector<std::string> names = {"bounds",      "discrepancy", "gauss",
                                                   "jacobi",      "kloosterman", "lemma-kl",
                                                   "moments",     "rconsts"};
    return names;
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        bad_config(std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) bad_config("top level must be an object");
    check_keys(j, "config",
               {"schema_version", "fields", "suites", "m", "k_extra", "n_max", "K_max", "subsets",
                "output_path", "tuple_budget", "row_cap", "compensated_summation", "threads"});
    if (int_field(j, "schema_version", 0, 0, std::numeric_limits<std::int64_t>::max()) != 1)
        bad_config("schema_version must be present and equal to 1");

    ExperimentConfig cfg;
    if (!j.contains("fields") || !j.at("fields").is_array() || j.at("fields").empty())
        bad_config("fields must be a nonempty array of [p, r] pairs");
    for (const json& f : j.at("fields")) {
        if (!f.is_array() || f.size() != 2 || !f[0].is_number_integer() ||
            !f[1].is_number_integer())
            bad_config("each field must be a [p, r] integer pair");
        std::int64_t p = f[0].get<std::int64_t>();
        std::int64_t r = f[1].get<std::int64_t>();
        if (p < 2 || !is_prime(p)) bad_config("field characteristic must be prime");
        if (r < 1) bad_config("field extension degree must be >= 1");
        std::int64_t q = 1;
        for (std::int64_t i = 0; i < r; ++i) {
            if (q > FieldTable::kMaxOrder / p) bad_config("field order exceeds the table cap");
            q *= p;
        }
        if (q < 3) bad_config("field order must be >= 3");
        cfg.fields.emplace_back(p, r);
    }
    std::sort(cfg.fields.begin(), cfg.fields.end(),
              [](const auto& a, const auto& b) {
                  auto qa = std::pow(static_cast<double>(a.first), static_cast<double>(a.second));
                  auto qb = std::pow(static_cast<double>(b.first), static_cast<double>(b.second));
                  return qa < qb;
              });
    cfg.fields.erase(std::unique(cfg.fields.begin(), cfg.fields.end()), cfg.fields.end());

    if (!j.contains("suites") || !j.at("suites").is_array() || j.at("suites").empty())
        bad_config("suites must be a nonempty array of suite names");
    for (const json& s : j.at("suites")) {
        if (!s.is_string()) bad_config("suite names must be strings");
        std::string name = s.get<std::string>();
        const auto& known = ExperimentConfig::suite_names();
        if (std::find(known.begin(), known.end(), name) == known.end())
            bad_config("unknown suite \"" + name + "\"");
        cfg.suites.push_back(std::move(name));
    }
    std::sort(cfg.suites.begin(), cfg.suites.end());
    cfg.suites.erase(std::unique(cfg.suites.begin(), cfg.suites.end()), cfg.suites.end());

    cfg.m = int_field(j, "m", 2, 1, 8);
    cfg.k_extra = int_field(j, "k_extra", 0, 0, 8);
    if (cfg.m + cfg.k_extra > 12) bad_config("family width m + k_extra must be <= 12");
    cfg.n_max = int_field(j, "n_max", 4, 1, 64);
    cfg.K_max = int_field(j, "K_max", 50, 1, 1000);
    cfg.tuple_budget = static_cast<std::uint64_t>(
        int_field(j, "tuple_budget", 10'000'000, 1, 1'000'000'000'000LL));
    cfg.row_cap = static_cast<std::uint64_t>(int_field(j, "row_cap", 1'000'000, 1, 100'000'000));
    cfg.threads = static_cast<int>(int_field(j, "threads", 0, 0, 1024));
    if (j.contains("compensated_summation")) {
        if (!j.at("compensated_summation").is_boolean())
            bad_config("compensated_summation must be a boolean");
        cfg.compensated_summation = j.at("compensated_summation").get<bool>();
    }
    if (j.contains("output_path")) {
        if (!j.at("output_path").is_string()) bad_config("output_path must be a string");
        cfg.output_path = j.at("output_path").get<std::string>();
    }

    if (j.contains("subsets")) {
        const json& sub = j.at("subsets");
        if (!sub.is_object()) bad_config("subsets must be an object");
        check_keys(sub, "subsets", {"policy", "sizes", "sizes_frac", "seeds", "lists"});
        std::string policy = sub.contains("policy") ? sub.at("policy").get<std::string>() : "full";
        if (policy == "full") {
            cfg.policy = SubsetPolicy::kFull;
            check_keys(sub, "subsets (policy full)", {"policy"});
        } else if (policy == "random") {
            cfg.policy = SubsetPolicy::kRandom;
            if (sub.contains("sizes"))
                for (const json& v : sub.at("sizes")) {
                    if (!v.is_number_integer()) bad_config("sizes entries must be integers");
                    cfg.sizes.push_back(v.get<std::int64_t>());
                }
            if (sub.contains("sizes_frac"))
                for (const json& v : sub.at("sizes_frac")) {
                    if (!v.is_number()) bad_config("sizes_frac entries must be numbers");
                    double f = v.get<double>();
                    if (!(f > 0.0) || f > 1.0) bad_config("sizes_frac entries must lie in (0, 1]");
                    cfg.sizes_frac.push_back(f);
                }
            if (cfg.sizes.empty() && cfg.sizes_frac.empty())
                bad_config("random policy needs sizes or sizes_frac");
            if (!sub.contains("seeds") || !sub.at("seeds").is_array() || sub.at("seeds").empty())
                bad_config("random policy needs a nonempty seeds array");
            for (const json& v : sub.at("seeds")) {
                if (!v.is_number_integer() || v.get<std::int64_t>() < 0)
                    bad_config("seeds must be nonnegative integers");
                cfg.seeds.push_back(v.get<std::uint64_t>());
            }
            std::sort(cfg.seeds.begin(), cfg.seeds.end());
            cfg.seeds.erase(std::unique(cfg.seeds.begin(), cfg.seeds.end()), cfg.seeds.end());
        } else if (policy == "explicit") {
            cfg.policy = SubsetPolicy::kExplicit;
            if (!sub.contains("lists") || !sub.at("lists").is_array())
                bad_config("explicit policy needs a lists array");
            for (const json& list : sub.at("lists")) {
                if (!list.is_array() || list.empty())
                    bad_config("each explicit subset must be a nonempty array");
                std::vector<std::int64_t> slot;
                for (const json& v : list) {
                    if (!v.is_number_integer())
                        bad_config("explicit subset entries must be integers");
                    slot.push_back(v.get<std::int64_t>());
                }
                cfg.explicit_lists.push_back(std::move(slot));
            }
            if (static_cast<std::int64_t>(cfg.explicit_lists.size()) != cfg.m)
                bad_config("explicit policy needs exactly m subset lists");
        } else {
            bad_config("policy must be one of full, random, explicit");
        }
    }

    // Per-field feasibility of the subset description.
    for (const auto& [p, r] : cfg.fields) {
        std::int64_t q = 1;
        for (std::int64_t i = 0; i < r; ++i) q *= p;
        for (std::int64_t s : cfg.sizes)
            if (s < 1 || s > q - 2)
                bad_config("size " + std::to_string(s) + " outside [1, q-2] for q = " +
                           std::to_string(q));
        for (const auto& list : cfg.explicit_lists)
            for (std::int64_t v : list)
                if (((v % (q - 1)) + (q - 1)) % (q - 1) == 0)
                    bad_config("explicit subsets must avoid the trivial character (q = " +
                               std::to_string(q) + ")");
    }

    for (const std::string& s : cfg.suites) {
        if (s == "jacobi" && cfg.m < 2) bad_config("jacobi suite needs m >= 2");
        if ((s == "discrepancy" || s == "moments") && cfg.m + cfg.k_extra < 2)
            bad_config(s + " suite needs m + k_extra >= 2");
    }
    return cfg;
}

ExperimentConfig config_from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) bad_config("cannot read config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return config_from_json(ss.str());
}

std::vector<ResultRow> run_config(const ExperimentConfig& cfg) {
    std::vector<Task> tasks;
    for (const std::string& suite : cfg.suites) {
        for (const auto& [p, r] : cfg.fields) {
            std::int64_t q = 1;
            for (std::int64_t i = 0; i < r; ++i) q *= p;
            if (suite_uses_seeds(suite) && cfg.policy == SubsetPolicy::kRandom) {
                for (std::uint64_t seed : cfg.seeds) tasks.push_back({suite, q, seed});
            } else {
                tasks.push_back({suite, q, 0});
            }
        }
    }

    std::vector<std::vector<ResultRow>> slots(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            slots[i] = run_task(tasks[i], cfg);
        }
    };
    int nthreads = decide_threads(cfg, tasks.size());
    if (nthreads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (std::thread& th : pool) th.join();
    }

    std::vector<ResultRow> rows;
    for (std::vector<ResultRow>& slot : slots)
        rows.insert(rows.end(), std::make_move_iterator(slot.begin()),
                    std::make_move_iterator(slot.end()));
    return rows;
}

bool all_pass(const std::vector<ResultRow>& rows) {
    for (const ResultRow& r : rows)
        if (!r.pass) return false;
    return true;
}

namespace {
constexpr char kCsvHeader[] =
    "schema,suite,item,q,m,k,n,sizes,seed,measured_re,measured_im,bound,pass,status,wall_ms";
} // namespace

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool with_timings) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const ResultRow& r : rows) {
        out += "1,";
        out += sanitize(r.suite);
        out += ',';
        out += sanitize(r.item);
        out += ',';
        out += std::to_string(r.q);
        out += ',';
        out += std::to_string(r.m);
        out += ',';
        out += std::to_string(r.k);
        out += ',';
        out += std::to_string(r.n);
        out += ',';
        out += sanitize(r.sizes);
        out += ',';
        out += std::to_string(r.seed);
        out += ',';
        out += fmt17(r.measured.real());
        out += ',';
        out += fmt17(r.measured.imag());
        out += ',';
        out += fmt17(r.bound);
        out += ',';
        out += r.pass ? '1' : '0';
        out += ',';
        out += sanitize(r.status);
        out += ',';
        out += with_timings ? fmt17(r.wall_ms) : std::string("0");
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> rows_from_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw Error("csv parse: missing or mismatched header");
    std::vector<ResultRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (;;) {
            std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                cols.push_back(line.substr(start));
                break;
            }
            cols.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (cols.size() != 15)
            throw Error("csv parse: expected 15 columns, found " + std::to_string(cols.size()));
        if (cols[0] != "1") throw Error("csv parse: unsupported schema " + cols[0]);
        ResultRow r;
        r.suite = cols[1];
        r.item = cols[2];
        r.q = std::stoll(cols[3]);
        r.m = std::stoll(cols[4]);
        r.k = std::stoll(cols[5]);
        r.n = std::stoll(cols[6]);
        r.sizes = cols[7];
        r.seed = std::stoull(cols[8]);
        r.measured = {std::strtod(cols[9].c_str(), nullptr),
                      std::strtod(cols[10].c_str(), nullptr)};
        r.bound = std::strtod(cols[11].c_str(), nullptr);
        r.pass = cols[12] == "1";
        r.status = cols[13];
        r.wall_ms = std::strtod(cols[14].c_str(), nullptr);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string rows_to_json(const std::vector<ResultRow>& rows, bool with_timings) {
    json out;
    out["schema"] = 1;
    json arr = json::array();
    for (const ResultRow& r : rows) {
        json o;
        o["suite"] = r.suite;
        o["item"] = r.item;
        o["q"] = r.q;
        o["m"] = r.m;
        o["k"] = r.k;
        o["n"] = r.n;
        o["sizes"] = r.sizes;
        o["seed"] = r.seed;
        o["measured_re"] = r.measured.real();
        o["measured_im"] = r.measured.imag();
        o["bound"] = r.bound;
        o["pass"] = r.pass;
        o["status"] = r.status;
        o["wall_ms"] = with_timings ? r.wall_ms : 0.0;
        arr.push_back(std::move(o));
    }
    out["rows"] = std::move(arr);
    return out.dump(2) + "\n";
}

} // namespace charsum
