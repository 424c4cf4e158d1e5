#pragma once

#include <string>
#include <vector>

#include "ffl/moments.hpp"

namespace ffl {

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;
};

struct VerifyOptions {
    bool quick = false;  // reduced populations, for fast unit runs
    int workers = 1;
};

/// Names of all exact-identity suites, in execution order.
std::vector<std::string> suite_names();
/// Runs the named suites ("all" or empty = every suite).
std::vector<SuiteResult> run_suites(const std::vector<std::string>& which,
                                    const VerifyOptions& opts = VerifyOptions{});

}  // namespace ffl
