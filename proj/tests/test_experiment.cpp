#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "charsum/bounds.hpp"
#include "charsum/characters.hpp"
#include "charsum/discrepancy.hpp"
#include "charsum/errors.hpp"
#include "charsum/experiment.hpp"
#include "charsum/exp_sums.hpp"
#include "charsum/finite_field.hpp"
#include "charsum/moments.hpp"
#include "doctest.h"

using namespace charsum;

namespace {

ExperimentConfig parse(const std::string& text) { return config_from_json(text); }

} // namespace

TEST_CASE("config defaults and normalization") {
    ExperimentConfig cfg =
        parse(R"({"schema_version":1,"fields":[[11,1],[7,1],[7,1]],"suites":["gauss"]})");
    REQUIRE(cfg.fields.size() == 2);
    CHECK(cfg.fields[0] == std::pair<std::int64_t, std::int64_t>{7, 1});
    CHECK(cfg.fields[1] == std::pair<std::int64_t, std::int64_t>{11, 1});
    CHECK(cfg.suites == std::vector<std::string>{"gauss"});
    CHECK(cfg.m == 2);
    CHECK(cfg.k_extra == 0);
    CHECK(cfg.n_max == 4);
    CHECK(cfg.policy == SubsetPolicy::kFull);
    CHECK(cfg.tuple_budget == 10000000);
    CHECK(cfg.threads == 0);
}

TEST_CASE("config rejection") {
    const char* bad[] = {
        R"({})",
        R"({"schema_version":2,"fields":[[7,1]],"suites":["gauss"]})",
        R"({"schema_version":1,"fields":[],"suites":["gauss"]})",
        R"({"schema_version":1,"fields":[[4,1]],"suites":["gauss"]})",
        R"({"schema_version":1,"fields":[[2,25]],"suites":["gauss"]})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["nope"]})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["gauss"],"bogus":1})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["jacobi"],"m":1})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["discrepancy"],"m":1})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["gauss"],
            "subsets":{"policy":"random","sizes":[6],"seeds":[1]}})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["gauss"],
            "subsets":{"policy":"random","sizes":[3]}})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["gauss"],
            "subsets":{"policy":"explicit","lists":[[1,2]]}})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["gauss"],
            "subsets":{"policy":"explicit","lists":[[1,6],[2,3]]}})",
        R"({"schema_version":1,"fields":[[7,1]],"suites":["gauss"],
            "subsets":{"policy":"sideways"}})",
        "not json",
    };
    for (const char* text : bad) CHECK_THROWS_AS(parse(text), ConfigInvalid);

    // m = 1 is fine for the moment suite once an unconstrained slot is added.
    CHECK_NOTHROW(parse(
        R"({"schema_version":1,"fields":[[7,1]],"suites":["moments"],"m":1,"k_extra":1})"));
}

TEST_CASE("config file round trip") {
    std::string path = "/tmp/charsum_test_config.json";
    {
        std::ofstream out(path);
        out << R"({"schema_version":1,"fields":[[7,1]],"suites":["gauss"],"n_max":2})";
    }
    ExperimentConfig cfg = config_from_file(path);
    CHECK(cfg.n_max == 2);
    std::remove(path.c_str());
    CHECK_THROWS_AS(config_from_file("/tmp/charsum_missing_config.json"), ConfigInvalid);
}

TEST_CASE("every suite runs clean on a small field") {
    ExperimentConfig cfg = parse(R"({
        "schema_version": 1,
        "fields": [[7, 1]],
        "suites": ["bounds", "discrepancy", "gauss", "jacobi",
                   "kloosterman", "lemma-kl", "moments", "rconsts"],
        "n_max": 2
    })");
    std::vector<ResultRow> rows = run_config(cfg);
    CHECK(rows.size() > 30);
    CHECK(all_pass(rows));
    for (const ResultRow& r : rows) {
        CHECK(r.q == 7);
        CHECK(r.status.substr(0, 5) != "error");
    }
}

TEST_CASE("csv serialization round trips byte for byte") {
    ExperimentConfig cfg = parse(R"({
        "schema_version": 1,
        "fields": [[7, 1], [11, 1]],
        "suites": ["discrepancy", "gauss"],
        "n_max": 2
    })");
    std::vector<ResultRow> rows = run_config(cfg);
    REQUIRE_FALSE(rows.empty());
    std::string csv = rows_to_csv(rows, false);
    CHECK(csv.substr(0, csv.find('\n')) ==
          "schema,suite,item,q,m,k,n,sizes,seed,measured_re,measured_im,bound,pass,status,wall_ms");
    std::vector<ResultRow> back = rows_from_csv(csv);
    REQUIRE(back.size() == rows.size());
    CHECK(rows_to_csv(back, false) == csv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        CHECK(back[i].suite == rows[i].suite);
        CHECK(back[i].item == rows[i].item);
        CHECK(back[i].measured == rows[i].measured);
        CHECK(back[i].bound == rows[i].bound);
        CHECK(back[i].pass == rows[i].pass);
    }
}

TEST_CASE("runs are deterministic and thread count free") {
    const char* base = R"({
        "schema_version": 1,
        "fields": [[7, 1], [13, 1]],
        "suites": ["discrepancy", "moments"],
        "n_max": 3,
        "subsets": {"policy": "random", "sizes": [4], "seeds": [1, 2]},
        "threads": %d
    })";
    char buf[512];
    std::snprintf(buf, sizeof buf, base, 1);
    std::string csv1 = rows_to_csv(run_config(parse(buf)), false);
    std::string csv1b = rows_to_csv(run_config(parse(buf)), false);
    CHECK(csv1 == csv1b);
    std::snprintf(buf, sizeof buf, base, 4);
    std::string csv4 = rows_to_csv(run_config(parse(buf)), false);
    CHECK(csv1 == csv4);
}

TEST_CASE("random families rebuild from the published seed derivation") {
    CHECK(slot_seed(7, 1) == 7000022);  // family_seed * 1000003 + slot
    CHECK(slot_seed(0, 0) == 0);

    ExperimentConfig cfg = parse(R"({
        "schema_version": 1,
        "fields": [[11, 1]],
        "suites": ["discrepancy"],
        "n_max": 2,
        "subsets": {"policy": "random", "sizes": [3], "seeds": [7]}
    })");
    std::vector<ResultRow> rows = run_config(cfg);
    const ResultRow* t1 = nullptr;
    for (const ResultRow& r : rows)
        if (r.item == "t1") t1 = &r;
    REQUIRE(t1 != nullptr);
    CHECK(t1->seed == 7);
    CHECK(t1->sizes == "3;3");

    FieldTable f(11);
    CharTable chars(f);
    std::vector<cplx> gauss = gauss_all(chars);
    std::vector<std::vector<std::int64_t>> slots{random_subset(9, 3, slot_seed(7, 0)),
                                                 random_subset(9, 3, slot_seed(7, 1))};
    double d = discrepancy_exact(jacobi_angles(chars, gauss, slots, 1000000)).value;
    CHECK(t1->measured.real() == d);
    CHECK(t1->bound == rhs_theorem1(11, 3, 3));
    CHECK(t1->pass == (d <= t1->bound + 1e-12));
}

TEST_CASE("explicit subsets run as given") {
    ExperimentConfig cfg = parse(R"({
        "schema_version": 1,
        "fields": [[11, 1]],
        "suites": ["moments"],
        "n_max": 2,
        "subsets": {"policy": "explicit", "lists": [[1, 3, 5], [2, 4]]}
    })");
    std::vector<ResultRow> rows = run_config(cfg);
    REQUIRE_FALSE(rows.empty());
    FieldTable f(11);
    CharTable chars(f);
    std::vector<cplx> gauss = gauss_all(chars);
    cplx want = moment(chars, gauss, {{1, 3, 5}, {2, 4}}, 0, 2);
    bool found = false;
    for (const ResultRow& r : rows)
        if (r.n == 2 && r.item == "m1") {
            CHECK(r.measured == want);
            CHECK(r.sizes == "3;2");
            found = true;
        }
    CHECK(found);
}
