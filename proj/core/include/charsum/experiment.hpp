#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "charsum/numeric.hpp"

namespace charsum {

// How the character subsets of a family are chosen, per field.
enum class SubsetPolicy {
    kFull,     // every slot is the full set of nontrivial characters
    kRandom,   // each slot drawn by random_subset, one family per (size, seed)
    kExplicit, // caller-supplied index lists, one per slot
};

// A validated sweep description. Parse from JSON with config_from_json; the
// schema is versioned and unknown keys are rejected so that a config file
// pins down the sweep exactly.
//
// JSON schema (version 1):
//   {
//     "schema_version": 1,                      // required
//     "fields": [[7,1],[11,1]],                 // required, [p,r] pairs
//     "suites": ["gauss","discrepancy"],        // required, see kSuiteNames
//     "m": 2, "k_extra": 0,                     // family shape
//     "n_max": 4,                               // moment orders 1..n_max
//     "K_max": 50,                              // Erdos-Turan cutoff cap
//     "subsets": {"policy": "full"}             // or: "random" with "sizes"
//        // (absolute), "sizes_frac" (fraction of q-2, ceil), "seeds";
//        // or: "explicit" with "lists" (m index lists)
//     "output_path": "rows.csv",                // optional
//     "tuple_budget": 10000000,                 // per-family enumeration cap
//     "row_cap": 1000000,                       // per-tuple row emission cap
//     "compensated_summation": false,           // Kahan path for gauss suite
//     "threads": 0                              // 0 = auto; env overrides
//   }
struct ExperimentConfig {
    std::vector<std::pair<std::int64_t, std::int64_t>> fields; // (p, r)
    std::vector<std::string> suites; // sorted and deduplicated by the parser
    std::int64_t m = 2;
    std::int64_t k_extra = 0;
    std::int64_t n_max = 4;
    std::int64_t K_max = 50;
    SubsetPolicy policy = SubsetPolicy::kFull;
    std::vector<std::int64_t> sizes;
    std::vector<double> sizes_frac;
    std::vector<std::uint64_t> seeds;
    std::vector<std::vector<std::int64_t>> explicit_lists;
    std::string output_path;
    std::uint64_t tuple_budget = 10'000'000ULL;
    std::uint64_t row_cap = 1'000'000ULL;
    bool compensated_summation = false;
    int threads = 0;

    // Suite names accepted in "suites".
    static const std::vector<std::string>& suite_names();
};

// Throw ConfigInvalid on schema violations (bad version, unknown keys,
// out-of-range values, sizes exceeding q-2 for any configured field).
ExperimentConfig config_from_json(const std::string& text);
ExperimentConfig config_from_file(const std::string& path);

// Seed of slot `i` in a random-policy family with the given family seed.
// Part of the output contract: a family's slots are reproducible as
// random_subset(q-2, size, slot_seed(seed, i)) from its result rows alone.
std::uint64_t slot_seed(std::uint64_t family_seed, std::size_t slot);

// One measurement. Column semantics vary per suite and are carried by
// `item`; see the README table. `pass` is true for rows that only report a
// value (pure bound rows, skipped rows), so a sweep fails exactly when some
// measured quantity violates its bound or errors out.
struct ResultRow {
    std::string suite;
    std::string item;
    std::int64_t q = 0;
    std::int64_t m = 0;
    std::int64_t k = 0;
    std::int64_t n = 0;
    std::string sizes;      // slot sizes joined with ';' (empty if n/a)
    std::uint64_t seed = 0;
    cplx measured{0.0, 0.0};
    double bound = 0.0;
    bool pass = true;
    std::string status = "ok"; // "ok" | "skipped:..." | "error:..."
    double wall_ms = 0.0;
};

// Run every suite over every field. Tasks are (suite, q, seed) and may run
// on a thread pool (CHARSUM_THREADS env var > cfg.threads > hardware);
// rows come back in a deterministic order independent of the thread count:
// tasks sorted by (suite, q, seed), emission order within a task fixed.
// Per-row failures are recorded in `status`, never thrown.
std::vector<ResultRow> run_config(const ExperimentConfig& cfg);

bool all_pass(const std::vector<ResultRow>& rows);

// CSV: versioned header, one row per ResultRow, doubles as %.17g (complex
// as two columns), byte-identical across runs. wall_ms is zeroed unless
// with_timings is set, keeping the default output reproducible.
std::string rows_to_csv(const std::vector<ResultRow>& rows, bool with_timings = false);
std::vector<ResultRow> rows_from_csv(const std::string& text);
std::string rows_to_json(const std::vector<ResultRow>& rows, bool with_timings = false);

} // namespace charsum
