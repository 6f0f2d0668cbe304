#include <doctest.h>

#include "moran/rng.hpp"
#include "moran/stats.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

using namespace moran;

TEST_CASE("aggregate on tiny fixed samples") {
    const std::vector<double> constant{1.0, 1.0, 1.0};
    const SampleStats a = aggregate(constant);
    CHECK(a.mean == 1.0);
    CHECK(a.variance == 0.0);
    CHECK(a.std_error == 0.0);

    const std::vector<double> two{0.0, 2.0};
    const SampleStats b = aggregate(two);
    CHECK(b.mean == doctest::Approx(1.0));
    CHECK(b.variance == doctest::Approx(2.0));
    CHECK(b.ci_low == doctest::Approx(1.0 - 1.96 * b.std_error));
    CHECK(b.ci_high == doctest::Approx(1.0 + 1.96 * b.std_error));

    const std::vector<double> one{3.5};
    const SampleStats c = aggregate(one);
    CHECK(c.n_reps == 1);
    CHECK(c.mean == 3.5);
    CHECK(c.variance == 0.0);  // single sample: variance reported as 0

    CHECK_THROWS_AS(aggregate(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("aggregate of a seeded uniform stream") {
    Rng rng(2024);
    std::vector<double> samples(1000000);
    for (auto& s : samples) s = rng.uniform01();
    const SampleStats stats = aggregate(samples);
    const double se = std::sqrt(1.0 / 12.0 / 1e6);
    CHECK(std::abs(stats.mean - 0.5) <= 3 * se);
    CHECK(stats.variance == doctest::Approx(1.0 / 12.0).epsilon(0.01));
}

TEST_CASE("mean and variance invariant under permutation and shift") {
    Rng rng(11);
    std::vector<double> samples(5000);
    for (auto& s : samples) s = rng.uniform01();
    const SampleStats base = aggregate(samples);

    std::vector<double> shuffled = samples;
    std::mt19937_64 mix(3);
    std::shuffle(shuffled.begin(), shuffled.end(), mix);
    const SampleStats permuted = aggregate(shuffled);
    CHECK(permuted.mean == doctest::Approx(base.mean).epsilon(1e-12));
    CHECK(permuted.variance == doctest::Approx(base.variance).epsilon(1e-12));

    std::vector<double> shifted = samples;
    for (auto& s : shifted) s += 100.0;
    const SampleStats moved = aggregate(shifted);
    CHECK(moved.mean == doctest::Approx(base.mean + 100.0).epsilon(1e-12));
    CHECK(moved.variance == doctest::Approx(base.variance).epsilon(1e-12));
}

TEST_CASE("z_test thresholds") {
    SampleStats stats;
    stats.n_reps = 100;
    stats.mean = 2.0;
    stats.variance = 1.0;
    stats.std_error = 0.1;

    CHECK(z_test(stats, 2.0).z_score == 0.0);
    CHECK(z_test(stats, 2.0).pass);

    const AgreementTest four_se = z_test(stats, 2.0 - 0.4);
    CHECK(four_se.z_score == doctest::Approx(4.0));
    CHECK_FALSE(four_se.pass);

    SampleStats dyadic = stats;
    dyadic.std_error = 0.25;
    const AgreementTest three_se = z_test(dyadic, 2.0 - 0.75);
    CHECK(three_se.z_score == 3.0);
    CHECK(three_se.pass);  // |z| = 3 is inside the gate

    SampleStats degenerate;
    degenerate.n_reps = 10;
    degenerate.mean = 1.0;
    const AgreementTest exact = z_test(degenerate, 1.0);
    CHECK(exact.pass);
    const AgreementTest impossible = z_test(degenerate, 2.0);
    CHECK_FALSE(impossible.pass);
    CHECK(std::isinf(impossible.z_score));

    SampleStats single;
    single.n_reps = 1;
    CHECK_THROWS_AS(z_test(single, 0.0), std::invalid_argument);
}
