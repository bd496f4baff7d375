// Runs every built-in verification check and prints one verdict line each.
// Exits nonzero when any check fails; notes are indented under the verdict.
#include <cstdio>
#include <string>
#include <vector>

#include "charsum/verify.hpp"

int main() {
    bool ok = true;
    std::size_t total = charsum::check_names().size();
    for (std::size_t i = 1; i <= total; ++i) {
        charsum::CheckResult r = charsum::run_check(static_cast<int>(i));
        std::fputs(charsum::format_check_line(r).c_str(), stdout);
        std::fputc('\n', stdout);
        for (const std::string& note : r.notes) std::printf("    %s\n", note.c_str());
        std::fflush(stdout);
        ok = ok && r.pass;
    }
    return ok ? 0 : 1;
}
