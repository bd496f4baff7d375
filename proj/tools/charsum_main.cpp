// charsum: command-line front end for the character sum toolkit.
//
// Exit codes: 0 success, 1 a computed value violated its bound (or a
// verification check failed), 2 usage or domain error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "charsum/bounds.hpp"
#include "charsum/characters.hpp"
#include "charsum/discrepancy.hpp"
#include "charsum/errors.hpp"
#include "charsum/experiment.hpp"
#include "charsum/exp_sums.hpp"
#include "charsum/finite_field.hpp"
#include "charsum/invariant_dims.hpp"
#include "charsum/moments.hpp"
#include "charsum/verify.hpp"

namespace {

using namespace charsum;

std::string fmt_cplx(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
    return buf;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// Polynomial display for an ascending coefficient vector, e.g. x^2 + 1.
std::string poly_string(const std::vector<std::int32_t>& coeffs) {
    std::string s;
    for (std::size_t d = coeffs.size(); d-- > 0;) {
        const std::int32_t c = coeffs[d];
        if (c == 0) continue;
        if (!s.empty()) s += " + ";
        if (d == 0 || c != 1) s += std::to_string(c);
        if (d >= 1) {
            if (c != 1) s += "*";
            s += "x";
            if (d > 1) s += "^" + std::to_string(d);
        }
    }
    return s.empty() ? "0" : s;
}

// Element display: residue for prime fields, polynomial in x otherwise.
std::string element_string(const FieldTable& f, felem code) {
    if (code == f.zero()) return "0";
    if (f.r() == 1) return std::to_string(code);
    std::vector<std::int32_t> digits;
    std::int64_t v = code;
    while (v > 0) {
        digits.push_back(static_cast<std::int32_t>(v % f.p()));
        v /= f.p();
    }
    return poly_string(digits);
}

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw ConfigInvalid("cannot open output file: " + out_path);
    os << text;
}

std::string render_rows(const std::vector<ResultRow>& rows, const std::string& format,
                        bool timings) {
    if (format == "json") return rows_to_json(rows, timings);
    return rows_to_csv(rows, timings);
}

std::vector<std::int64_t> full_indices(std::int64_t q) {
    std::vector<std::int64_t> v(static_cast<std::size_t>(q - 2));
    std::iota(v.begin(), v.end(), std::int64_t{1});
    return v;
}

// Slot lists for one family: the m leading slots follow the size/seed
// request, the k_extra trailing slots are always full.
std::vector<std::vector<std::int64_t>> make_slots(std::int64_t q, std::int64_t m,
                                                  std::int64_t k_extra,
                                                  const std::vector<std::int64_t>& sizes,
                                                  std::uint64_t seed) {
    std::vector<std::vector<std::int64_t>> slots;
    for (std::int64_t i = 0; i < m; ++i) {
        if (sizes.empty()) {
            slots.push_back(full_indices(q));
        } else {
            const std::int64_t size = sizes[std::min<std::size_t>(
                static_cast<std::size_t>(i), sizes.size() - 1)];
            slots.push_back(random_subset(q - 2, size, slot_seed(seed, static_cast<std::size_t>(i))));
        }
    }
    for (std::int64_t i = 0; i < k_extra; ++i) slots.push_back(full_indices(q));
    return slots;
}

int cmd_field(std::int64_t q, const std::string& format, const std::string& out) {
    FieldTable f(q);
    std::ostringstream os;
    const std::string gen = element_string(f, f.generator_index());
    if (format == "json") {
        os << "{\"q\":" << f.q() << ",\"p\":" << f.p() << ",\"r\":" << f.r()
           << ",\"units\":" << f.units() << ",\"generator\":\"" << gen << "\",\"modulus\":\""
           << poly_string(f.modulus()) << "\"}\n";
    } else if (format == "csv") {
        os << "key,value\n";
        os << "q," << f.q() << "\n";
        os << "p," << f.p() << "\n";
        os << "r," << f.r() << "\n";
        os << "units," << f.units() << "\n";
        os << "generator," << gen << "\n";
        os << "modulus," << poly_string(f.modulus()) << "\n";
    } else {
        os << "q = " << f.q() << " = " << f.p() << "^" << f.r() << "\n";
        os << "units = " << f.units() << "\n";
        os << "generator = " << gen << "\n";
        os << "modulus = " << poly_string(f.modulus()) << "\n";
    }
    emit(os.str(), out);
    return 0;
}

int cmd_gauss(std::int64_t q, const std::string& format, const std::string& out, bool timings) {
    FieldTable f(q);
    CharTable chars(f);
    const std::vector<cplx> g = gauss_all(chars);
    const double rq = std::sqrt(static_cast<double>(q));
    std::vector<ResultRow> rows;
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(g.size()); ++j) {
        ResultRow r;
        r.suite = "gauss";
        r.item = "chi:" + std::to_string(j);
        r.q = q;
        r.n = j;
        r.measured = g[static_cast<std::size_t>(j)];
        r.bound = j == 0 ? 1.0 : rq;
        r.pass = std::abs(std::abs(r.measured) - r.bound) <= 1e-8 * r.bound;
        rows.push_back(std::move(r));
    }
    emit(render_rows(rows, format, timings), out);
    return all_pass(rows) ? 0 : 1;
}

int cmd_jacobi(std::int64_t q, const std::vector<std::int64_t>& js, const std::string& format,
               const std::string& out) {
    FieldTable f(q);
    CharTable chars(f);
    const cplx direct = jacobi_direct(chars, js);
    const cplx via_gauss = jacobi_via_gauss(chars, js);
    const double scale =
        std::pow(static_cast<double>(q), (static_cast<double>(js.size()) - 1.0) / 2.0);
    std::ostringstream os;
    if (format == "json") {
        os << "{\"q\":" << q << ",\"m\":" << js.size() << ",\"re\":" << fmt_double(direct.real())
           << ",\"im\":" << fmt_double(direct.imag()) << ",\"modulus\":"
           << fmt_double(std::abs(direct)) << ",\"expected_modulus\":" << fmt_double(scale)
           << "}\n";
    } else {
        os << "J = " << fmt_cplx(direct) << "\n";
        os << "via Gauss sums = " << fmt_cplx(via_gauss) << "\n";
        os << "|J| = " << fmt_double(std::abs(direct)) << ", q^((m-1)/2) = " << fmt_double(scale)
           << "\n";
    }
    emit(os.str(), out);
    return 0;
}

int cmd_kloosterman(std::int64_t q, std::int64_t n, const std::string& format,
                    const std::string& out, bool timings) {
    FieldTable f(q);
    CharTable chars(f);
    const std::vector<cplx> kl = kloosterman_all(chars, n);
    const double bound = static_cast<double>(n) *
                         std::pow(static_cast<double>(q), (static_cast<double>(n) - 1.0) / 2.0);
    std::vector<ResultRow> rows;
    for (std::int64_t t = 0; t < static_cast<std::int64_t>(kl.size()); ++t) {
        ResultRow r;
        r.suite = "kloosterman";
        r.item = "log:" + std::to_string(t);
        r.q = q;
        r.n = n;
        r.measured = kl[static_cast<std::size_t>(t)];
        r.bound = bound;
        r.pass = std::abs(r.measured) <= bound * (1 + 1e-9);
        rows.push_back(std::move(r));
    }
    emit(render_rows(rows, format, timings), out);
    return all_pass(rows) ? 0 : 1;
}

int cmd_discrepancy(std::int64_t q, std::int64_t m, std::int64_t k_extra,
                    const std::vector<std::int64_t>& sizes, std::uint64_t seed,
                    std::uint64_t budget, const std::string& format, const std::string& out) {
    FieldTable f(q);
    CharTable chars(f);
    const std::vector<cplx> gauss = gauss_all(chars);
    const auto slots = make_slots(q, m, k_extra, sizes, seed);
    std::vector<std::int64_t> slot_sizes;
    for (const auto& s : slots) slot_sizes.push_back(static_cast<std::int64_t>(s.size()));

    std::vector<double> angles = jacobi_angles(chars, gauss, slots, budget);
    const std::uint64_t N = angles.size();
    const DiscrepancyResult d = discrepancy_exact(std::move(angles));

    struct BoundLine {
        std::string name;
        double value;
    };
    std::vector<BoundLine> bounds;
    if (k_extra == 0 && m >= 2)
        bounds.push_back({"two-slot", rhs_theorem1(q, slot_sizes[0], slot_sizes[1])});
    if (k_extra >= 1) {
        bounds.push_back({"extra-slot", rhs_theorem2(q, k_extra, slot_sizes[0], m)});
        if (k_extra == 1) {
            try {
                bounds.push_back({"extra-slot-large", rhs_theorem2_large(q, slot_sizes[0])});
            } catch (const DomainError&) {
            }
        }
    }
    const bool all_full = sizes.empty();
    if (all_full && m + k_extra >= 2)
        bounds.push_back({"all-full", rhs_theorem3(q, m + k_extra)});

    bool ok = true;
    std::ostringstream os;
    if (format == "json") {
        os << "{\"q\":" << q << ",\"m\":" << m << ",\"k_extra\":" << k_extra << ",\"N\":" << N
           << ",\"D\":" << fmt_double(d.value) << ",\"arc_start\":" << fmt_double(d.arc_start)
           << ",\"arc_length\":" << fmt_double(d.arc_length) << ",\"arc_hits\":" << d.hits
           << ",\"bounds\":{";
        for (std::size_t i = 0; i < bounds.size(); ++i) {
            if (i) os << ",";
            os << "\"" << bounds[i].name << "\":" << fmt_double(bounds[i].value);
            ok = ok && d.value <= bounds[i].value * (1 + 1e-12);
        }
        os << "}}\n";
    } else {
        os << "N=" << N << "\n";
        os << "D=" << fmt_double(d.value) << "\n";
        os << "arc=[" << fmt_double(d.arc_start) << ","
           << fmt_double(d.arc_start + d.arc_length) << ") hits=" << d.hits
           << " expected=" << fmt_double(d.arc_length * static_cast<double>(N)) << "\n";
        for (const BoundLine& b : bounds) {
            const bool pass = d.value <= b.value * (1 + 1e-12);
            ok = ok && pass;
            os << "bound " << b.name << " = " << fmt_double(b.value) << " : "
               << (pass ? "pass" : "VIOLATED") << "\n";
        }
    }
    emit(os.str(), out);
    return ok ? 0 : 1;
}

int cmd_moments(std::int64_t q, std::int64_t m, std::int64_t k_extra, std::int64_t n_max,
                const std::vector<std::int64_t>& sizes, std::uint64_t seed,
                const std::string& format, const std::string& out, bool timings) {
    FieldTable f(q);
    CharTable chars(f);
    const std::vector<cplx> gauss = gauss_all(chars);
    // moment() appends the k_extra full slots itself; build only the m leading ones.
    const auto slots = make_slots(q, m, 0, sizes, seed);
    std::vector<std::int64_t> member_sizes, all_sizes;
    for (const auto& s : slots) member_sizes.push_back(static_cast<std::int64_t>(s.size()));
    all_sizes = member_sizes;
    for (std::int64_t i = 0; i < k_extra; ++i) all_sizes.push_back(q - 2);
    std::string sizes_str;
    for (std::size_t i = 0; i < all_sizes.size(); ++i) {
        if (i) sizes_str += ";";
        sizes_str += std::to_string(all_sizes[i]);
    }

    std::vector<ResultRow> rows;
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const cplx v = moment(chars, gauss, slots, k_extra, n);
        const double a = std::abs(v);
        ResultRow base;
        base.q = q;
        base.m = m;
        base.k = k_extra;
        base.n = n;
        base.suite = "moments";
        base.sizes = sizes_str;
        base.seed = sizes.empty() ? 0 : seed;
        base.measured = v;

        ResultRow r1 = base;
        r1.item = "m1";
        r1.bound = rhs_moment1(q, n, all_sizes);
        r1.pass = a <= r1.bound * (1 + 1e-9) + 1e-9;
        rows.push_back(r1);
        if (k_extra >= 1) {
            ResultRow r2 = base;
            r2.item = "m2";
            r2.bound = rhs_moment2(q, f.p(), n, k_extra, member_sizes);
            r2.pass = a <= r2.bound * (1 + 1e-9) + 1e-9;
            rows.push_back(r2);
        }
        if (sizes.empty() && m + k_extra >= 2) {
            ResultRow r3 = base;
            r3.item = "m3";
            r3.bound = rhs_moment3(q, f.p(), n, m + k_extra);
            r3.pass = a <= r3.bound * (1 + 1e-9) + 1e-9;
            rows.push_back(r3);
        }
    }
    emit(render_rows(rows, format, timings), out);
    return all_pass(rows) ? 0 : 1;
}

Group parse_group(const std::string& name) {
    if (name == "mu") return Group::Mu;
    if (name == "sp") return Group::Sp;
    if (name == "sl") return Group::Sl;
    if (name == "so") return Group::So;
    if (name == "g2") return Group::G2;
    throw ConfigInvalid("unknown group: " + name);
}

int cmd_rconst(const std::string& group_name, std::int64_t n, std::int64_t p, std::int64_t steps,
               std::int64_t k, std::int64_t l, std::int64_t table_max, const std::string& format,
               const std::string& out) {
    std::ostringstream os;
    if (steps >= 0) {
        // closed-walk count on the fundamental alcove; defined for g2 only
        if (group_name != "g2") throw ConfigInvalid("--steps applies to --group g2 only");
        os << r_g2(steps).str() << "\n";
        emit(os.str(), out);
        return 0;
    }
    const Group grp = parse_group(group_name);
    const Monodromy g{grp, n, p};
    if (table_max >= 0) {
        os << "group,n,k,l,R,bound\n";
        for (std::int64_t kk = 0; kk <= table_max; ++kk)
            for (std::int64_t ll = 0; kk + ll <= table_max; ++ll)
                os << group_name << "," << n << "," << kk << "," << ll << ","
                   << r_lookup(g, kk, ll).str() << "," << fmt_double(r_bound(g, kk, ll)) << "\n";
        emit(os.str(), out);
        return 0;
    }
    if (k < 0 || l < 0) throw ConfigInvalid("rconst needs --steps, --kmax, or both --k and --l");
    const bigint R = r_lookup(g, k, l);
    if (format == "json") {
        os << "{\"group\":\"" << group_name << "\",\"n\":" << n << ",\"k\":" << k << ",\"l\":" << l
           << ",\"R\":" << R.str() << ",\"bound\":" << fmt_double(r_bound(g, k, l)) << "}\n";
    } else {
        os << R.str() << "\n";
    }
    emit(os.str(), out);
    return 0;
}

int cmd_verify(const std::string& suite, bool list_only, const std::string& out) {
    std::ostringstream os;
    if (list_only) {
        const auto& names = check_names();
        for (std::size_t i = 0; i < names.size(); ++i)
            os << i + 1 << " " << names[i] << "\n";
        emit(os.str(), out);
        return 0;
    }
    std::vector<CheckResult> results;
    if (suite == "all") {
        results = run_all_checks();
    } else {
        try {
            const int id = std::stoi(suite);
            results.push_back(run_check(id));
        } catch (const std::invalid_argument&) {
            results.push_back(run_check(suite));
        }
    }
    bool ok = true;
    for (const CheckResult& r : results) {
        ok = ok && r.pass;
        os << format_check_line(r) << "\n";
        for (const std::string& note : r.notes) os << "  " << note << "\n";
    }
    emit(os.str(), out);
    return ok ? 0 : 1;
}

int cmd_sweep(const std::string& config_path, std::string out, const std::string& format,
              bool timings) {
    const ExperimentConfig cfg = config_from_file(config_path);
    if (out.empty()) out = cfg.output_path;
    const std::vector<ResultRow> rows = run_config(cfg);
    emit(render_rows(rows, format, timings), out);
    return all_pass(rows) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"character sum toolkit: Gauss/Jacobi/Kloosterman sums, equidistribution "
                 "measurements, and their proven ceilings"};
    app.require_subcommand(1);

    int rc = 0;
    std::string format, out_path;
    bool timings = false;

    // Each subcommand has its own default format; an explicit --format wins.
    auto add_common = [&](CLI::App* sub, const char* default_format) {
        sub->add_option("--format", format, std::string("output format (default ") +
                                                default_format + ")")
            ->check(CLI::IsMember({"text", "csv", "json"}));
        sub->add_option("--out", out_path, "write output to a file instead of stdout");
        sub->add_flag("--timings", timings, "include wall-clock times in row output");
        const std::string def = default_format;
        sub->preparse_callback([&format, def](std::size_t) { format = def; });
    };

    // field
    std::int64_t q = 7;
    auto* field = app.add_subcommand("field", "print the structure of one finite field");
    field->add_option("--q", q, "field order (prime power)")->required();
    add_common(field, "text");
    field->callback([&] { rc = cmd_field(q, format, out_path); });

    // gauss
    auto* gauss = app.add_subcommand("gauss", "Gauss sums for every character of one field");
    gauss->add_option("--q", q, "field order (prime power)")->required();
    add_common(gauss, "csv");
    gauss->callback([&] { rc = cmd_gauss(q, format, out_path, timings); });

    // jacobi
    std::vector<std::int64_t> char_indices;
    auto* jacobi = app.add_subcommand("jacobi", "one Jacobi sum, by both evaluation paths");
    jacobi->add_option("--q", q, "field order (prime power)")->required();
    jacobi->add_option("--chars", char_indices, "character indices (comma separated)")
        ->required()
        ->delimiter(',');
    add_common(jacobi, "text");
    jacobi->callback([&] { rc = cmd_jacobi(q, char_indices, format, out_path); });

    // kloosterman
    std::int64_t n = 2;
    auto* kloo = app.add_subcommand("kloosterman", "hyper-Kloosterman sums over one field");
    kloo->add_option("--q", q, "field order (prime power)")->required();
    kloo->add_option("--n", n, "number of factors in the defining product")->check(CLI::Range(1, 64));
    add_common(kloo, "csv");
    kloo->callback([&] { rc = cmd_kloosterman(q, n, format, out_path, timings); });

    // discrepancy
    std::int64_t m = 2, k_extra = 0;
    std::vector<std::int64_t> sizes;
    std::uint64_t seed = 1;
    std::uint64_t budget = 200'000'000ULL;
    bool full = false;
    auto* disc = app.add_subcommand(
        "discrepancy", "discrepancy of one normalized Jacobi sum family, with its ceilings");
    disc->add_option("--q", q, "field order (prime power)")->required();
    disc->add_option("--m", m, "number of leading slots")->check(CLI::Range(1, 8));
    disc->add_option("--k-extra", k_extra, "number of trailing full slots")
        ->check(CLI::Range(0, 8));
    auto* disc_sizes =
        disc->add_option("--sizes", sizes, "subset size per leading slot (comma separated)")
            ->delimiter(',');
    disc->add_flag("--full", full, "use every nontrivial character in every leading slot")
        ->excludes(disc_sizes);
    disc->add_option("--seed", seed, "seed for random subset draws");
    disc->add_option("--tuple-budget", budget, "abort if the family has more tuples than this");
    add_common(disc, "text");
    disc->callback([&] {
        if (!full && sizes.empty())
            throw CLI::ValidationError("discrepancy", "pass --full or --sizes");
        rc = cmd_discrepancy(q, m, k_extra, full ? std::vector<std::int64_t>{} : sizes, seed,
                             budget, format, out_path);
    });

    // moments
    std::int64_t n_max = 4;
    bool mfull = false;
    auto* mom = app.add_subcommand("moments",
                                   "power-sum moments of one family, with their ceilings");
    mom->add_option("--q", q, "field order (prime power)")->required();
    mom->add_option("--m", m, "number of leading slots")->check(CLI::Range(1, 8));
    mom->add_option("--k-extra", k_extra, "number of trailing full slots")->check(CLI::Range(0, 8));
    mom->add_option("--n-max", n_max, "compute moments of order 1..n_max")->check(CLI::Range(1, 64));
    auto* mom_sizes =
        mom->add_option("--sizes", sizes, "subset size per leading slot (comma separated)")
            ->delimiter(',');
    mom->add_flag("--full", mfull, "use every nontrivial character in every leading slot")
        ->excludes(mom_sizes);
    mom->add_option("--seed", seed, "seed for random subset draws");
    add_common(mom, "csv");
    mom->callback([&] {
        if (!mfull && sizes.empty())
            throw CLI::ValidationError("moments", "pass --full or --sizes");
        rc = cmd_moments(q, m, k_extra, n_max, mfull ? std::vector<std::int64_t>{} : sizes, seed,
                         format, out_path, timings);
    });

    // rconst
    std::string group_name = "g2";
    std::int64_t gn = 7, gp = 2, steps = -1, rk = -1, rl = -1, table_max = -1;
    auto* rconst = app.add_subcommand("rconst", "tensor invariant dimensions and their ceilings");
    rconst->add_option("--group", group_name, "mu | sp | sl | so | g2")
        ->check(CLI::IsMember({"mu", "sp", "sl", "so", "g2"}));
    rconst->add_option("--n", gn, "standard representation dimension");
    rconst->add_option("--p", gp, "characteristic (used by group mu)");
    rconst->add_option("--steps", steps, "closed-walk count after this many steps (g2)");
    rconst->add_option("--k", rk, "dual tensor exponent");
    rconst->add_option("--l", rl, "tensor exponent");
    rconst->add_option("--kmax", table_max, "emit a CSV table for all k+l <= kmax");
    add_common(rconst, "text");
    rconst->callback(
        [&] { rc = cmd_rconst(group_name, gn, gp, steps, rk, rl, table_max, format, out_path); });

    // verify
    std::string suite = "all";
    bool list_only = false;
    auto* verify = app.add_subcommand("verify", "run the acceptance checks");
    verify->add_option("--suite", suite, "all, a check number, or a check name");
    verify->add_flag("--list", list_only, "list check names and exit");
    add_common(verify, "text");
    verify->callback([&] { rc = cmd_verify(suite, list_only, out_path); });

    // sweep
    std::string config_path;
    auto* sweep = app.add_subcommand("sweep", "run a configured experiment sweep");
    sweep->add_option("--config", config_path, "JSON experiment configuration")
        ->required()
        ->check(CLI::ExistingFile);
    add_common(sweep, "csv");
    sweep->callback([&] { rc = cmd_sweep(config_path, out_path, format, timings); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}
