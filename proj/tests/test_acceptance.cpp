#include "morsekit/app/suite.hpp"

#include <chrono>
#include <iostream>

using namespace morsekit;

int main() {
    app::RunConfig cfg;
    cfg.scene = "suite";
    cfg.seed = 20240611;
    const auto start = std::chrono::steady_clock::now();
    const auto report = app::run_suite(cfg);
    for (const auto& c : report.criteria) std::cout << app::summary_line(c) << "\n";
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << (report.pass() ? "ALL PASS" : "FAILURES") << " (" << report.criteria.size() << " criteria, " << secs << " s)\n";
    return report.pass() ? 0 : 1;
}
