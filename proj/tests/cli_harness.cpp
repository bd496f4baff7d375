#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iterator>
#include <string>
#include <sys/wait.h>

#include "charsum/experiment.hpp"

namespace {

struct RunResult {
    int exit_code;
    std::string output;  // stdout and stderr interleaved
};

RunResult run(const std::string& args) {
    std::string cmd = std::string(CHARSUM_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int status = pclose(pipe);
    int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return {code, out};
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::size_t count_lines(const std::string& s) {
    std::size_t n = 0;
    for (char c : s)
        if (c == '\n') ++n;
    return n;
}

} // namespace

TEST_CASE("help and usage errors") {
    CHECK(run("--help").exit_code == 0);
    CHECK(run("").exit_code == 2);
    CHECK(run("frobnicate").exit_code == 2);
    CHECK(run("jacobi --q 5").exit_code == 2);   // missing --chars
    CHECK(run("gauss").exit_code == 2);          // missing --q
}

TEST_CASE("domain errors exit with 2") {
    RunResult r = run("field --q 6");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.output, "error"));
    CHECK(run("field --q 2").exit_code == 2);
    CHECK(run("rconst --group sl --n 3 --steps 4").exit_code == 2);
    CHECK(run("moments --q 7 --m 1 --full").exit_code == 2);
}

TEST_CASE("field description") {
    RunResult r = run("field --q 9");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "q = 9 = 3^2"));
    CHECK(contains(r.output, "generator = x + 1"));
    CHECK(contains(r.output, "modulus = x^2 + 1"));
    RunResult p = run("field --q 7");
    CHECK(p.exit_code == 0);
    CHECK(contains(p.output, "generator = 3"));
}

TEST_CASE("gauss table rows") {
    RunResult r = run("gauss --q 7 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output,
                   "schema,suite,item,q,m,k,n,sizes,seed,measured_re,measured_im,bound,"
                   "pass,status,wall_ms"));
    CHECK(count_lines(r.output) == 7);  // header + one row per character
    CHECK(contains(r.output, "1,gauss,chi:0,7"));
}

TEST_CASE("jacobi values") {
    RunResult r = run("jacobi --q 5 --chars 1,1");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "J = -1-2i"));
    CHECK(contains(r.output, "via Gauss sums = -1-2i"));
    // A tuple with trivial product character is a domain error.
    CHECK(run("jacobi --q 5 --chars 1,3").exit_code == 2);
}

TEST_CASE("kloosterman rows stay within the purity bound") {
    RunResult r = run("kloosterman --q 11 --n 2 --format csv");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 11);  // header + one row per unit
    CHECK_FALSE(contains(r.output, ",0,ok"));  // every pass flag is 1
}

TEST_CASE("discrepancy report") {
    RunResult r = run("discrepancy --q 7 --m 2 --full");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "N=20"));
    CHECK(contains(r.output, "D=0.272814474171"));
    CHECK(contains(r.output, "bound two-slot"));
    CHECK(contains(r.output, "bound all-full"));
    CHECK(contains(r.output, ": pass"));

    RunResult j = run("discrepancy --q 7 --m 2 --full --format json");
    CHECK(j.exit_code == 0);
    CHECK(contains(j.output, "\"D\":0.272814474171"));
    CHECK(contains(j.output, "\"arc_hits\":10"));
}

TEST_CASE("moment report with random subsets") {
    RunResult r = run("moments --q 17 --m 2 --sizes 6,6 --seed 5 --n-max 3");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.output, "pass"));
    CHECK_FALSE(contains(r.output, "FAIL"));
    // Same command, same seed: identical output.
    CHECK(run("moments --q 17 --m 2 --sizes 6,6 --seed 5 --n-max 3").output == r.output);
}

TEST_CASE("invariant dimension tables") {
    RunResult r = run("rconst --group g2 --steps 8");
    CHECK(r.exit_code == 0);
    CHECK(r.output == "455\n");
    RunResult t = run("rconst --kmax 2 --group sp --n 4 --p 3 --format csv");
    CHECK(t.exit_code == 0);
    CHECK(contains(t.output, "group,n,k,l,R,bound"));
    CHECK(count_lines(t.output) == 7);  // header + the six pairs with k+l <= 2
    CHECK(contains(t.output, "sp,4,1,1,1,1"));
}

TEST_CASE("verify lists its checks") {
    RunResult r = run("verify --list");
    CHECK(r.exit_code == 0);
    CHECK(count_lines(r.output) == 9);
    CHECK(contains(r.output, "1 gauss-jacobi-moduli"));
    CHECK(contains(r.output, "9 full-family-trend"));
}

TEST_CASE("sweep consumes a config file and writes csv") {
    std::string cfg_path = "/tmp/charsum_cli_sweep.json";
    std::string out_path = "/tmp/charsum_cli_sweep.csv";
    {
        std::ofstream out(cfg_path);
        out << R"({"schema_version":1,"fields":[[7,1],[11,1]],)"
            << R"("suites":["gauss","discrepancy"],"n_max":2})";
    }
    RunResult r = run("sweep --config " + cfg_path + " --out " + out_path);
    CHECK(r.exit_code == 0);
    std::ifstream in(out_path);
    REQUIRE(in.good());
    std::string csv((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(contains(csv, "schema,suite,item,q"));
    // The file must parse back into rows, all passing.
    std::vector<charsum::ResultRow> rows = charsum::rows_from_csv(csv);
    CHECK(rows.size() >= 20);
    CHECK(charsum::all_pass(rows));
    std::remove(cfg_path.c_str());
    std::remove(out_path.c_str());

    CHECK(run("sweep --config /tmp/charsum_missing.json").exit_code == 2);
}
