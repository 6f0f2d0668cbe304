// =============================================================================
// simulate.hpp — Trajectories to fixation and Monte Carlo replication.
//
// Two unbiased estimators of the fixation weight of the initial carrier:
//
//   weights    — track weight1 and report its sum at fixation (the
//                conditional expectation given the pedigree; low variance);
//   gene_drop  — drop actual ancestor labels through the pedigree with a
//                fresh fair coin per birth and count label-0 sites at
//                fixation (unbiased, strictly higher variance).
//
// Per-step draw order is fixed and identical for both estimators:
// mother, father, victim, neutral-locus coin.  The coin is drawn (and
// discarded) even in weights runs, so a given (seed, replication) yields
// the same trajectory under either estimator and the two estimates are
// coupled on the same pedigree.
// =============================================================================
#pragma once

#include "moran/population.hpp"
#include "moran/rng.hpp"
#include "moran/stats.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace moran {

struct SimResult {
    double final_weight = 0;        // sum of weight1 at fixation (B; C = 0 there)
    long long fixation_step = 0;    // first step with all sites carriers
    std::vector<long long> sweep_times;  // S_1..S_N when recorded, else empty
    long long gene_drop_count = -1; // label-0 site count at fixation; -1 if untracked
};

enum class Estimator { weights, gene_drop };

/// Thrown when a run exceeds its step cap; carries the replication index
/// when raised inside replicate().
class SimulationError : public std::runtime_error {
public:
    explicit SimulationError(const std::string& what, long long replication = -1)
        : std::runtime_error(what), replication_(replication) {}
    long long replication() const { return replication_; }

private:
    long long replication_;
};

/// Run a weight-tracking trajectory until every site carries the allele.
SimResult run_to_fixation(const PopulationConfig& config, Rng& rng,
                          bool record_sweep = false);

/// Run a label-dropping trajectory; also tracks weight1 (cheap) so the
/// result carries both coupled estimates.
SimResult gene_drop_run(const PopulationConfig& config, Rng& rng,
                        bool record_sweep = false);

/// n_reps independent replications on streams keyed by (seed, index);
/// deterministic for fixed arguments regardless of n_threads (0 = one
/// thread per hardware core).
SampleStats replicate(const PopulationConfig& config, long long n_reps,
                      std::uint64_t seed, Estimator estimator, int n_threads = 0);

/// Per-replication values in replication order (same contract as
/// replicate(); used where pairs of coupled estimates are needed).
std::vector<double> replicate_values(const PopulationConfig& config, long long n_reps,
                                     std::uint64_t seed, Estimator estimator,
                                     int n_threads = 0);

/// Single-step conditional means of B and C from a fixed state, split by
/// whether the carrier count jumped, against the four expected one-step
/// formulas.  Sampling is by rejection on the conditioning event.
/// Throws SimulationError when no trial matches.
struct ConditionalCheck {
    double b_mean = 0;
    double c_mean = 0;
    double b_std_error = 0;
    double c_std_error = 0;
    double b_expected = 0;
    double c_expected = 0;
    long long n_matched = 0;
};

ConditionalCheck validate_conditional_step(const PopulationState& state, bool jump,
                                           long long n_trials, Rng& rng);

/// Expected one-step values alone (no sampling).
void conditional_expectations(const PopulationState& state, bool jump,
                              double& b_expected, double& c_expected);

/// Mean observed sweep times S_k versus the analytic N sum_{j<k} 1/j.
struct SweepTimeRow {
    long long k = 0;
    double mean_step = 0;
    double std_error = 0;
    double expected_step = 0;
};

std::vector<SweepTimeRow> sweep_time_stats(const PopulationConfig& config,
                                           long long n_reps, std::uint64_t seed);

}  // namespace moran
