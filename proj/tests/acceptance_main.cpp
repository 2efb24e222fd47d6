// Acceptance gate: one line per criterion, nonzero exit when any fails.
// argv[1] is the path to the command-line binary (used by the determinism
// criterion, which byte-compares two full `suite all --seed 7` runs).

#include "recfun/suites.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace recfun;

namespace {

int g_failures = 0;

void report(int idx, const std::string& what, bool passed, double seconds,
            double limit, const std::string& detail) {
    bool in_time = seconds <= limit;
    bool ok = passed && in_time;
    if (!ok) ++g_failures;
    std::printf("criterion %2d: %s — %s (%.1fs, limit %.0fs)", idx,
                ok ? "PASS" : "FAIL", what.c_str(), seconds, limit);
    if (!passed) std::printf(" — %s", detail.c_str());
    if (passed && !in_time) std::printf(" — over time limit");
    std::printf("\n");
    std::fflush(stdout);
}

void run_suite(int idx, double limit, const std::function<SuiteResult()>& fn) {
    auto t0 = std::chrono::steady_clock::now();
    SuiteResult r = fn();
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                   .count();
    report(idx, r.name + ", " + std::to_string(r.cases) + " cases", r.passed, s,
           limit, r.detail);
}

std::string capture(const std::string& command, bool& ok) {
    std::string out;
    FILE* p = popen(command.c_str(), "r");
    if (!p) {
        ok = false;
        return out;
    }
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.append(buf, n);
    ok = pclose(p) == 0;
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    run_suite(1, 5.0, suite_binomial);
    run_suite(2, 1.0, suite_heights);
    run_suite(3, 60.0, [] { return suite_blockvec(7, 10000); });
    run_suite(4, 2.0, suite_ssqrt);
    run_suite(5, 120.0, suite_genfn);
    run_suite(6, 30.0, suite_xs_extract);
    run_suite(7, 180.0, suite_fom);
    run_suite(8, 120.0, [] { return suite_minsky(7); });
    run_suite(9, 300.0, [] { return suite_perm(7); });

    if (argc < 2) {
        report(10, "determinism", false, 0.0, 600.0, "missing CLI path argument");
    } else {
        auto t0 = std::chrono::steady_clock::now();
        std::string cmd = std::string("\"") + argv[1] + "\" suite all --seed 7 2>&1";
        bool ok1 = false, ok2 = false;
        std::string a = capture(cmd, ok1);
        std::string b = capture(cmd, ok2);
        double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                       .count();
        bool passed = ok1 && ok2 && !a.empty() && a == b;
        report(10, "suite all --seed 7 byte-identical across two runs", passed, s,
               600.0, !ok1 || !ok2 ? "suite run failed" : "reports differ");
    }

    return g_failures == 0 ? 0 : 1;
}
