// =============================================================================
// stats.hpp — Monte Carlo aggregation and z-score agreement gates.
// =============================================================================
#pragma once

#include <span>

namespace moran {

struct SampleStats {
    long long n_reps = 0;
    double mean = 0;
    double variance = 0;  // n-1 divisor; 0 for a single sample
    double std_error = 0;
    double ci_low = 0;    // mean -+ 1.96 std_error
    double ci_high = 0;
};

/// One-pass Welford mean/variance over the samples in order.
/// Throws std::invalid_argument on empty input.
SampleStats aggregate(std::span<const double> samples);

/// |z| <= 3 agreement gate between a Monte Carlo mean and a reference value.
struct AgreementTest {
    double observed_mean = 0;
    double reference = 0;
    double std_error = 0;
    double z_score = 0;  // +-inf flagged when std_error is 0 and means differ
    bool pass = false;
};

AgreementTest z_test(const SampleStats& stats, double reference);

}  // namespace moran
