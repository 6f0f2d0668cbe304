// =============================================================================
// validation.hpp — Named end-to-end checks over the whole toolkit.
//
// Each check couples an implementation path to an independent route
// (exact rational vs float, closed form vs recurrence, Monte Carlo vs
// exact expectation) and reports one PASS/FAIL line.  Monte Carlo gates
// use |z| <= 3 (about 0.3% false-failure rate per gate; rerunning with a
// fresh seed is the intended response to a borderline failure).
// =============================================================================
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace moran {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 20260808;
    std::string only;                      // substring filter on check names
    long long conditional_trials = 100000; // per hand-built state and branch
    long long coupling_reps = 30000;       // Monte Carlo reps per estimator
    int threads = 0;                       // 0 = hardware concurrency
};

/// Runs every check whose name contains options.only (all when empty).
std::vector<CheckResult> run_validation_suite(const ValidationOptions& options = {});

/// Names of all checks, in execution order.
std::vector<std::string> validation_check_names();

}  // namespace moran
