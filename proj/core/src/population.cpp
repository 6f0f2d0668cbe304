#include "moran/population.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace moran {

void PopulationConfig::validate() const {
    if (size < 2)
        throw std::invalid_argument("population size must be >= 2 (got " +
                                    std::to_string(size) + ")");
    if (full_matrix_mode && size > full_matrix_limit)
        throw std::invalid_argument("full matrix mode is limited to size <= " +
                                    std::to_string(full_matrix_limit) + " (got " +
                                    std::to_string(size) + ")");
    if (max_steps < 0) throw std::invalid_argument("max_steps must be >= 0");
}

long long PopulationConfig::effective_max_steps() const {
    if (max_steps > 0) return max_steps;
    const double n = static_cast<double>(size);
    return static_cast<long long>(50.0 * n * std::log(n)) + 1000;
}

PopulationState new_population(const PopulationConfig& config) {
    config.validate();
    const auto n = static_cast<std::size_t>(config.size);
    PopulationState state;
    state.time = 0;
    state.advantaged.assign(n, 0);
    state.advantaged[0] = 1;
    state.weight1.assign(n, 0.0);
    state.weight1[0] = 1.0;
    state.non_advantaged.reserve(n);
    state.na_pos.assign(n, -1);
    for (std::size_t i = 1; i < n; ++i) {
        state.na_pos[i] = static_cast<int>(state.non_advantaged.size());
        state.non_advantaged.push_back(static_cast<int>(i));
    }
    if (config.full_matrix_mode) {
        state.weights_full.assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) state.weights_full[i * n + i] = 1.0;
    }
    return state;
}

PopulationState make_state(std::vector<std::uint8_t> advantaged,
                           std::vector<double> weight1) {
    if (advantaged.size() != weight1.size() || advantaged.size() < 2)
        throw std::invalid_argument("make_state: mask and weights must have equal size >= 2");
    PopulationState state;
    state.advantaged = std::move(advantaged);
    state.weight1 = std::move(weight1);
    const auto n = state.advantaged.size();
    state.na_pos.assign(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        if (state.advantaged[i]) continue;
        state.na_pos[i] = static_cast<int>(state.non_advantaged.size());
        state.non_advantaged.push_back(static_cast<int>(i));
    }
    return state;
}

StepEvent sample_step(const PopulationState& state, Rng& rng) {
    if (state.fixed())
        throw std::logic_error("sample_step called at fixation (no non-carrier left)");
    const auto n = static_cast<std::uint64_t>(state.n_sites());
    StepEvent event;
    event.mother = static_cast<int>(rng.bounded(n));
    event.father = static_cast<int>(rng.bounded(n));
    const auto idx = rng.bounded(static_cast<std::uint64_t>(state.non_advantaged.size()));
    event.killed = state.non_advantaged[static_cast<std::size_t>(idx)];
    return event;
}

bool apply_step(PopulationState& state, const StepEvent& event) {
    if (state.advantaged[static_cast<std::size_t>(event.killed)])
        throw std::invalid_argument("apply_step: event kills a carrier site");

    // Offspring weight from pre-replacement parent values.
    const double offspring_weight =
        0.5 * (state.weight1[static_cast<std::size_t>(event.mother)] +
               state.weight1[static_cast<std::size_t>(event.father)]);

    if (state.tracks_full_matrix()) {
        const auto n = static_cast<std::size_t>(state.n_sites());
        std::vector<double> offspring_row(n);
        for (std::size_t j = 0; j < n; ++j)
            offspring_row[j] =
                0.5 * (state.full_at(event.mother, static_cast<int>(j)) +
                       state.full_at(event.father, static_cast<int>(j)));
        for (std::size_t j = 0; j < n; ++j)
            state.full_at(event.killed, static_cast<int>(j)) = offspring_row[j];
    }

    state.weight1[static_cast<std::size_t>(event.killed)] = offspring_weight;

    const bool jumped = state.advantaged[static_cast<std::size_t>(event.mother)] != 0;
    if (jumped) {
        state.advantaged[static_cast<std::size_t>(event.killed)] = 1;
        // Swap-remove the new carrier from the non-carrier list.
        const int pos = state.na_pos[static_cast<std::size_t>(event.killed)];
        const int last = state.non_advantaged.back();
        state.non_advantaged[static_cast<std::size_t>(pos)] = last;
        state.na_pos[static_cast<std::size_t>(last)] = pos;
        state.non_advantaged.pop_back();
        state.na_pos[static_cast<std::size_t>(event.killed)] = -1;
    }
    ++state.time;
    return jumped;
}

WeightSplit weight_split(const PopulationState& state) {
    WeightSplit split;
    for (std::size_t i = 0; i < state.weight1.size(); ++i) {
        if (state.advantaged[i])
            split.advantaged_sum += state.weight1[i];
        else
            split.non_advantaged_sum += state.weight1[i];
    }
    return split;
}

}  // namespace moran
