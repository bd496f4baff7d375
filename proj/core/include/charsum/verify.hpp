#pragma once

#include <string>
#include <vector>

namespace charsum {

/// Outcome of one acceptance check: pass/fail plus a few human-readable
/// evidence lines (counts, worst deviations, first failure when any).
struct CheckResult {
    int id = 0; ///< 1-based position in check_names()
    std::string name;
    bool pass = false;
    std::vector<std::string> notes;
    double wall_ms = 0.0;
};

/// Check names in execution order. Stable: the CLI `verify` subcommand and
/// the acceptance binary key off these.
const std::vector<std::string>& check_names();

/// Run one check by position (1-based) or by name; DomainError when unknown.
CheckResult run_check(int id);
CheckResult run_check(const std::string& name);

/// Every check in order. The bound-domination sweep is computed once and
/// shared with the Erdos-Turan comparison, so a full run costs little more
/// than its slowest member.
std::vector<CheckResult> run_all_checks();

/// One-line summary: "check 3/9 kloosterman-power-sums: PASS (412 ms)".
std::string format_check_line(const CheckResult& r);

} // namespace charsum
