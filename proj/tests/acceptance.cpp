// acceptance.cpp — Release gate. Runs every hard criterion through the same
// check functions the CLI `check` subcommand uses, prints exactly one
// [PASS]/[FAIL] line per criterion with its wall time, and exits nonzero if
// any hard criterion fails. Soft findings never fail the gate; their absence
// or escalation to FAIL does.
#include "udq/verify.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

using namespace udq::verify;

namespace {

struct Gate {
    int number = 0;
    int line = 0;
    bool pass = true;
    double seconds = 0.0;
    std::string label;
    std::string note;
};

std::vector<Gate> gates;
std::vector<CheckResult> pool;

void run_gate(int number, int line, const char* label, double budget_seconds,
              const std::function<std::vector<CheckResult>()>& body) {
    Gate g;
    g.number = number;
    g.line = line;
    g.label = label;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const std::vector<CheckResult> rs = body();
        for (const CheckResult& c : rs) {
            pool.push_back(c);
            if (c.level == Level::Fail && g.pass) {
                g.pass = false;
                g.note = format_check_line(c);
            }
        }
    } catch (const std::exception& e) {
        g.pass = false;
        g.note = std::string("exception: ") + e.what();
    }
    g.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    if (g.pass && budget_seconds > 0.0 && g.seconds > budget_seconds) {
        g.pass = false;
        char buf[96];
        std::snprintf(buf, sizeof(buf), "took %.2fs, budget %.0fs", g.seconds,
                      budget_seconds);
        g.note = buf;
    }
    gates.push_back(g);
}

#define GATE(number, label, budget, body) \
    run_gate(number, __LINE__, label, budget, body)

}  // namespace

int main() {
    const std::filesystem::path scratch =
        std::filesystem::temp_directory_path() / "udq-acceptance-scratch";
    std::filesystem::create_directories(scratch);

    GATE(1, "Choi fingerprints at r in {0, pi/8, pi/4}", 1.0,
         [] { return check_choi_unruh(); });
    GATE(2, "Kraus completeness across the figure grids", 10.0,
         [] { return check_completeness(); });
    GATE(3, "three Fisher routes agree on the noiseless channel", 30.0,
         [] { return check_pure_unruh_routes(); });
    GATE(4, "noise channels collapse to the bare channel in their limits", 0.0,
         [] { return check_reductions(); });
    GATE(5, "analytic gradients match extrapolated differences everywhere", 0.0,
         [] { return check_gradients(); });
    GATE(6, "closed forms match the generic route on the noisy grids", 0.0,
         [] { return check_closed_vs_generic(); });
    GATE(8, "figure trends hold", 0.0, [] { return check_trends(); });
    GATE(9, "figure-5 CSVs identical across reruns and worker counts", 0.0,
         [&scratch] { return check_determinism(scratch.string()); });

    // The full battery, including the skew residual report, must carry the
    // two documented findings as SOFT and no FAIL anywhere: the condition
    // under which the `check` subcommand exits 0.
    GATE(7, "documented discrepancies stay soft; battery has no hard failure",
         0.0, [] {
             std::vector<CheckResult> rs = check_skew_residuals();
             const std::vector<CheckResult> findings = check_soft_findings();
             rs.insert(rs.end(), findings.begin(), findings.end());
             std::size_t soft = 0;
             for (const CheckResult& c : findings) {
                 if (c.level == Level::Soft) ++soft;
             }
             if (soft != 2) {
                 rs.push_back({Level::Fail, "finding-count",
                               "expected 2 soft findings, saw " +
                                   std::to_string(soft)});
             }
             for (const CheckResult& c : pool) {
                 if (c.level == Level::Fail) {
                     rs.push_back({Level::Fail, "battery-" + c.id, c.detail});
                     break;
                 }
             }
             return rs;
         });

    for (int number = 1; number <= 9; ++number) {
        for (const Gate& g : gates) {
            if (g.number != number) continue;
            if (g.pass) {
                std::printf("[PASS] criterion-%d %s (%.2fs)\n", g.number,
                            g.label.c_str(), g.seconds);
            } else {
                std::printf("[FAIL] acceptance.cpp:%d criterion-%d %s: %s\n",
                            g.line, g.number, g.label.c_str(), g.note.c_str());
            }
        }
    }

    for (const Gate& g : gates) {
        if (!g.pass) return 1;
    }
    return 0;
}
