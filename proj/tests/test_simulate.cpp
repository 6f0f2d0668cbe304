#include <doctest.h>

#include "moran/rational.hpp"
#include "moran/recurrence.hpp"
#include "moran/simulate.hpp"
#include "moran/stats.hpp"

#include <cmath>
#include <vector>

using namespace moran;

namespace {

PopulationConfig config_of(long long n) {
    PopulationConfig config;
    config.size = n;
    return config;
}

}  // namespace

TEST_CASE("fixation at N=2 takes two steps on average") {
    // The carrier count jumps with probability 1/2 per step: geometric mean 2.
    std::vector<double> times(100000);
    for (std::size_t r = 0; r < times.size(); ++r) {
        Rng rng = Rng::for_replication(7, r);
        times[r] = static_cast<double>(run_to_fixation(config_of(2), rng).fixation_step);
    }
    const SampleStats stats = aggregate(times);
    CHECK(std::abs(stats.mean - 2.0) <= 3 * stats.std_error);
}

TEST_CASE("Monte Carlo fixation weight matches the exact recurrence") {
    // u_2 = 9/5 and u_3 = 121/49, hand-derived and frozen.
    const SampleStats two = replicate(config_of(2), 100000, 11, Estimator::weights);
    CHECK(std::abs(two.mean - 1.8) <= 3 * two.std_error);

    const SampleStats three = replicate(config_of(3), 100000, 12, Estimator::weights);
    CHECK(std::abs(three.mean - 121.0 / 49.0) <= 3 * three.std_error);
}

TEST_CASE("gene drop is unbiased for the same expectation") {
    const SampleStats three = replicate(config_of(3), 100000, 13, Estimator::gene_drop);
    CHECK(std::abs(three.mean - 121.0 / 49.0) <= 3 * three.std_error);

    // Counts stay in 0..N.
    for (std::uint64_t r = 0; r < 200; ++r) {
        Rng rng = Rng::for_replication(14, r);
        const SimResult run = gene_drop_run(config_of(5), rng);
        CHECK(run.gene_drop_count >= 0);
        CHECK(run.gene_drop_count <= 5);
    }
}

TEST_CASE("weights and gene drop are coupled on the same trajectory") {
    for (std::uint64_t r = 0; r < 50; ++r) {
        Rng a = Rng::for_replication(15, r);
        Rng b = Rng::for_replication(15, r);
        const SimResult weights = run_to_fixation(config_of(6), a);
        const SimResult drops = gene_drop_run(config_of(6), b);
        CHECK(weights.fixation_step == drops.fixation_step);
        CHECK(weights.final_weight == drops.final_weight);
    }
}

TEST_CASE("gene-drop estimator has strictly larger variance") {
    const SampleStats weights = replicate(config_of(10), 30000, 16, Estimator::weights);
    const SampleStats drops = replicate(config_of(10), 30000, 16, Estimator::gene_drop);
    CHECK(drops.variance > weights.variance);
    const double cross = std::abs(weights.mean - drops.mean) /
                         std::sqrt(weights.std_error * weights.std_error +
                                   drops.std_error * drops.std_error);
    CHECK(cross <= 3.0);
}

TEST_CASE("replicate is deterministic and thread-count independent") {
    const SampleStats base = replicate(config_of(10), 20000, 17, Estimator::weights, 1);
    const SampleStats again = replicate(config_of(10), 20000, 17, Estimator::weights, 1);
    CHECK(base.mean == again.mean);
    CHECK(base.variance == again.variance);
    for (const int threads : {2, 4, 16}) {
        const SampleStats threaded =
            replicate(config_of(10), 20000, 17, Estimator::weights, threads);
        CHECK(threaded.mean == base.mean);
        CHECK(threaded.variance == base.variance);
        CHECK(threaded.std_error == base.std_error);
        CHECK(threaded.ci_low == base.ci_low);
        CHECK(threaded.ci_high == base.ci_high);
    }

    const SampleStats single = replicate(config_of(4), 1, 18, Estimator::weights);
    CHECK(single.n_reps == 1);
    CHECK(single.variance == 0.0);
}

TEST_CASE("step cap aborts runaway runs with the failing replication") {
    PopulationConfig config = config_of(50);
    config.max_steps = 3;  // far below the ~N log N fixation time
    try {
        replicate(config, 10, 19, Estimator::weights);
        FAIL("expected SimulationError");
    } catch (const SimulationError& e) {
        CHECK(e.replication() >= 0);
    }
}

TEST_CASE("conditional one-step means match the four expected formulas") {
    SUBCASE("initial state plug-in values") {
        const PopulationState state = new_population(config_of(8));
        double b_expected = 0, c_expected = 0;
        conditional_expectations(state, true, b_expected, c_expected);
        CHECK(b_expected == doctest::Approx(1.0 + 0.5 + 1.0 / 16).epsilon(1e-15));
        CHECK(c_expected == 0.0);
        conditional_expectations(state, false, b_expected, c_expected);
        CHECK(b_expected == 1.0);
        CHECK(c_expected == doctest::Approx(1.0 / 16).epsilon(1e-15));
    }
    SUBCASE("empirical means at a crafted state") {
        const PopulationState state = make_state({1, 1, 0, 0}, {1.0, 0.5, 0.0, 0.0});
        Rng rng(20);
        for (const bool jump : {false, true}) {
            const ConditionalCheck check = validate_conditional_step(state, jump, 100000, rng);
            CHECK(check.n_matched > 10000);
            if (check.b_std_error > 0)
                CHECK(std::abs(check.b_mean - check.b_expected) <= 3 * check.b_std_error);
            else
                CHECK(check.b_mean == doctest::Approx(check.b_expected).epsilon(1e-12));
            CHECK(std::abs(check.c_mean - check.c_expected) <= 3 * check.c_std_error);
        }
    }
    SUBCASE("no matched trial reports instead of fabricating") {
        // With a single trial, one of the two conditioning requests cannot
        // match; probe the stream to learn which and assert it throws.
        const PopulationState state = make_state({1, 0}, {1.0, 0.0});
        Rng probe(21);
        const StepEvent event = sample_step(state, probe);
        const bool jumps = state.advantaged[static_cast<std::size_t>(event.mother)] != 0;
        Rng rng(21);
        CHECK_THROWS_AS(validate_conditional_step(state, !jumps, 1, rng), SimulationError);
    }
}

TEST_CASE("sweep times follow the geometric sums") {
    const auto rows_n2 = sweep_time_stats(config_of(2), 100000, 22);
    REQUIRE(rows_n2.size() == 2);
    CHECK(rows_n2[0].mean_step == 0.0);  // S_1 = 0 always
    CHECK(rows_n2[0].expected_step == 0.0);
    CHECK(std::abs(rows_n2[1].mean_step - 2.0) <= 3 * rows_n2[1].std_error);

    const auto rows_n10 = sweep_time_stats(config_of(10), 30000, 23);
    REQUIRE(rows_n10.size() == 10);
    double harmonic = 0;
    for (int j = 1; j <= 9; ++j) harmonic += 1.0 / j;
    CHECK(rows_n10[9].expected_step == doctest::Approx(10.0 * harmonic).epsilon(1e-12));
    CHECK(std::abs(rows_n10[9].mean_step - 10.0 * harmonic) <= 3 * rows_n10[9].std_error);
    for (std::size_t k = 1; k < rows_n10.size(); ++k)
        CHECK(rows_n10[k].mean_step > rows_n10[k - 1].mean_step);
}

TEST_CASE("recorded sweep times are strictly increasing after S_1") {
    Rng rng(24);
    const SimResult run = run_to_fixation(config_of(12), rng, /*record_sweep=*/true);
    REQUIRE(run.sweep_times.size() == 12);
    CHECK(run.sweep_times[0] == 0);
    for (std::size_t i = 1; i < run.sweep_times.size(); ++i)
        CHECK(run.sweep_times[i] > run.sweep_times[i - 1]);
    CHECK(run.sweep_times.back() == run.fixation_step);
}
