#pragma once

// The acceptance checks, shared between the standalone acceptance
// binary and the `verify-all` subcommand. Each criterion produces one
// pass/fail line; artifacts (CSV/SVG/tables) are written when an output
// directory is configured.

#include <optional>
#include <string>
#include <vector>

namespace sklab::verify {

struct Config {
    int volume_budget = 12;
    double corpus_resolution = 0.1;
    double disk_resolution = 0.05;
    int threads = 0; // 0: decide from hardware and STEKLOV_LAB_THREADS
    std::optional<std::string> out_dir;
    int precision_digits = 35;
};

struct CriterionResult {
    int index = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

std::vector<CriterionResult> run_acceptance(const Config& cfg);

// resolved thread count honoring STEKLOV_LAB_THREADS
int thread_budget(int requested);

} // namespace sklab::verify
