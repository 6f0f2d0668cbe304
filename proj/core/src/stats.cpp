#include "moran/stats.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace moran {

SampleStats aggregate(std::span<const double> samples) {
    if (samples.empty()) throw std::invalid_argument("aggregate: empty sample");
    SampleStats stats;
    stats.n_reps = static_cast<long long>(samples.size());
    double mean = 0.0;
    double m2 = 0.0;
    long long count = 0;
    for (const double value : samples) {
        ++count;
        const double delta = value - mean;
        mean += delta / static_cast<double>(count);
        m2 += delta * (value - mean);
    }
    stats.mean = mean;
    stats.variance = count > 1 ? m2 / static_cast<double>(count - 1) : 0.0;
    stats.std_error = std::sqrt(stats.variance / static_cast<double>(count));
    stats.ci_low = stats.mean - 1.96 * stats.std_error;
    stats.ci_high = stats.mean + 1.96 * stats.std_error;
    return stats;
}

AgreementTest z_test(const SampleStats& stats, double reference) {
    if (stats.n_reps < 2) throw std::invalid_argument("z_test: need n_reps >= 2");
    AgreementTest test;
    test.observed_mean = stats.mean;
    test.reference = reference;
    test.std_error = stats.std_error;
    if (stats.std_error == 0.0) {
        if (stats.mean == reference) {
            test.z_score = 0.0;
            test.pass = true;
        } else {
            test.z_score = stats.mean > reference
                               ? std::numeric_limits<double>::infinity()
                               : -std::numeric_limits<double>::infinity();
            test.pass = false;
        }
        return test;
    }
    test.z_score = (stats.mean - reference) / stats.std_error;
    test.pass = std::abs(test.z_score) <= 3.0;
    return test;
}

}  // namespace moran
