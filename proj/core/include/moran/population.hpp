// =============================================================================
// population.hpp — Population state and single-step dynamics.
//
// N sites, one initial carrier of the advantageous allele at site 0
// (site 1 in all external, 1-based formats).  Each step draws a mother and
// a father independently and uniformly over all sites, and a victim
// uniformly over the non-carrier sites only; the victim is replaced by the
// offspring.  The mother is, by convention, the parent transmitting the
// allele at the selected locus, so the victim becomes a carrier exactly
// when the mother is one.  Parents may coincide with each other and with
// the victim; offspring weights always read pre-replacement values.
//
// weight1[i] tracks the probability that the neutral-locus allele at site
// i descends from the initial carrier.  Entries are dyadic rationals
// (nested half-sums), so double arithmetic is exact to ~50 halvings; the
// optional full matrix mode tracks all N ancestor columns and is used by
// the invariant suites (row sums must stay 1).
// =============================================================================
#pragma once

#include "moran/rng.hpp"

#include <cstdint>
#include <vector>

namespace moran {

struct PopulationConfig {
    long long size = 0;            // number of sites N, >= 2
    bool full_matrix_mode = false; // track the full N x N ancestry matrix
    long long max_steps = 0;       // 0 = default cap 50 N ln N + 1000
    long long full_matrix_limit = 64;

    /// Throws std::invalid_argument when the configuration is unusable.
    void validate() const;

    /// Step cap actually applied (resolves the 0 default).
    long long effective_max_steps() const;
};

struct StepEvent {
    int mother = 0;  // 0-based site indices
    int father = 0;
    int killed = 0;
};

struct PopulationState {
    long long time = 0;
    std::vector<std::uint8_t> advantaged;  // carrier mask
    std::vector<double> weight1;           // ancestry weight of site 0's ancestor
    std::vector<double> weights_full;      // N x N row-major; empty unless tracked
    std::vector<int> non_advantaged;       // non-carrier sites (unordered)
    std::vector<int> na_pos;               // site -> index in non_advantaged, -1 if carrier

    int n_sites() const { return static_cast<int>(advantaged.size()); }
    int advantaged_count() const {
        return n_sites() - static_cast<int>(non_advantaged.size());
    }
    bool fixed() const { return non_advantaged.empty(); }
    bool tracks_full_matrix() const { return !weights_full.empty(); }

    double& full_at(int row, int col) {
        return weights_full[static_cast<std::size_t>(row) * advantaged.size() +
                            static_cast<std::size_t>(col)];
    }
    double full_at(int row, int col) const {
        return weights_full[static_cast<std::size_t>(row) * advantaged.size() +
                            static_cast<std::size_t>(col)];
    }
};

/// Time-0 state: site 0 is the unique carrier, weight1 = e_0, full matrix
/// (when tracked) is the identity.
PopulationState new_population(const PopulationConfig& config);

/// State with the given carrier mask and weight vector (no full matrix);
/// for hand-built scenarios in validation and tests.
PopulationState make_state(std::vector<std::uint8_t> advantaged, std::vector<double> weight1);

/// Draw one event: mother, father uniform over all sites, victim uniform
/// over non-carriers.  Consumes exactly three bounded draws.
/// Throws std::logic_error at fixation.
StepEvent sample_step(const PopulationState& state, Rng& rng);

/// Apply an event in place.  Returns true when the carrier count jumped
/// (mother was a carrier).  Throws std::invalid_argument if the event
/// kills a carrier.
bool apply_step(PopulationState& state, const StepEvent& event);

/// Sums of weight1 over carriers (B) and non-carriers (C).
struct WeightSplit {
    double advantaged_sum = 0;      // B
    double non_advantaged_sum = 0;  // C
};

WeightSplit weight_split(const PopulationState& state);

}  // namespace moran
