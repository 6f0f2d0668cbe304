#include "moran/simulate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <mutex>
#include <numeric>
#include <optional>
#include <thread>

namespace moran {

namespace {

SimResult run_impl(const PopulationConfig& config, Rng& rng, bool record_sweep,
                   bool track_labels) {
    PopulationState state = new_population(config);
    const long long step_cap = config.effective_max_steps();
    const auto n = static_cast<std::size_t>(config.size);

    std::vector<int> labels;
    if (track_labels) {
        labels.resize(n);
        std::iota(labels.begin(), labels.end(), 0);
    }

    SimResult result;
    if (record_sweep) {
        result.sweep_times.reserve(n);
        result.sweep_times.push_back(0);  // S_1 = 0: one carrier at time 0
    }

    while (!state.fixed()) {
        if (state.time >= step_cap)
            throw SimulationError("step cap exceeded (" + std::to_string(step_cap) +
                                  " steps) before fixation at N = " +
                                  std::to_string(config.size));
        const StepEvent event = sample_step(state, rng);
        const bool maternal_copy = rng.coin();  // drawn in both modes, see header
        const bool jumped = apply_step(state, event);
        if (track_labels) {
            labels[static_cast<std::size_t>(event.killed)] =
                labels[static_cast<std::size_t>(maternal_copy ? event.mother
                                                              : event.father)];
        }
        if (jumped && record_sweep) result.sweep_times.push_back(state.time);
    }

    result.final_weight = std::accumulate(state.weight1.begin(), state.weight1.end(), 0.0);
    result.fixation_step = state.time;
    if (track_labels)
        result.gene_drop_count = std::count(labels.begin(), labels.end(), 0);
    return result;
}

int resolve_threads(int n_threads, long long n_reps) {
    int threads = n_threads > 0 ? n_threads
                                : static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    return static_cast<int>(std::min<long long>(threads, n_reps));
}

}  // namespace

SimResult run_to_fixation(const PopulationConfig& config, Rng& rng, bool record_sweep) {
    config.validate();
    return run_impl(config, rng, record_sweep, /*track_labels=*/false);
}

SimResult gene_drop_run(const PopulationConfig& config, Rng& rng, bool record_sweep) {
    config.validate();
    return run_impl(config, rng, record_sweep, /*track_labels=*/true);
}

std::vector<double> replicate_values(const PopulationConfig& config, long long n_reps,
                                     std::uint64_t seed, Estimator estimator,
                                     int n_threads) {
    config.validate();
    if (n_reps < 1) throw std::invalid_argument("replicate: n_reps must be >= 1");

    std::vector<double> values(static_cast<std::size_t>(n_reps));
    const int threads = resolve_threads(n_threads, n_reps);

    std::atomic<bool> failed{false};
    std::mutex error_mutex;
    std::optional<std::pair<long long, std::string>> first_error;

    auto worker = [&](long long begin, long long end) {
        for (long long r = begin; r < end; ++r) {
            if (failed.load(std::memory_order_relaxed)) return;
            try {
                Rng rng = Rng::for_replication(seed, static_cast<std::uint64_t>(r));
                const bool labels = estimator == Estimator::gene_drop;
                const SimResult run = run_impl(config, rng, false, labels);
                values[static_cast<std::size_t>(r)] =
                    labels ? static_cast<double>(run.gene_drop_count) : run.final_weight;
            } catch (const std::exception& e) {
                failed.store(true, std::memory_order_relaxed);
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error || r < first_error->first)
                    first_error = std::make_pair(r, std::string(e.what()));
                return;
            }
        }
    };

    if (threads == 1) {
        worker(0, n_reps);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        const long long chunk = (n_reps + threads - 1) / threads;
        for (int t = 0; t < threads; ++t) {
            const long long begin = static_cast<long long>(t) * chunk;
            const long long end = std::min<long long>(begin + chunk, n_reps);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& th : pool) th.join();
    }

    if (first_error)
        throw SimulationError("replication " + std::to_string(first_error->first) +
                                  " failed: " + first_error->second,
                              first_error->first);
    return values;
}

SampleStats replicate(const PopulationConfig& config, long long n_reps, std::uint64_t seed,
                      Estimator estimator, int n_threads) {
    const std::vector<double> values =
        replicate_values(config, n_reps, seed, estimator, n_threads);
    return aggregate(values);  // sequential reduction in replication order
}

void conditional_expectations(const PopulationState& state, bool jump, double& b_expected,
                              double& c_expected) {
    const WeightSplit split = weight_split(state);
    const double b = split.advantaged_sum;
    const double c = split.non_advantaged_sum;
    const auto n = static_cast<double>(state.n_sites());
    const auto y = static_cast<double>(state.advantaged_count());
    if (jump) {
        b_expected = b + b / (2.0 * y) + (b + c) / (2.0 * n);
        c_expected = c - c / (n - y);
    } else {
        b_expected = b;
        c_expected = c - c / (n - y) + c / (2.0 * (n - y)) + (b + c) / (2.0 * n);
    }
}

ConditionalCheck validate_conditional_step(const PopulationState& state, bool jump,
                                           long long n_trials, Rng& rng) {
    if (state.fixed())
        throw std::logic_error("validate_conditional_step: state is already fixed");
    if (n_trials < 1)
        throw std::invalid_argument("validate_conditional_step: n_trials >= 1 required");

    ConditionalCheck check;
    conditional_expectations(state, jump, check.b_expected, check.c_expected);

    const WeightSplit split = weight_split(state);
    // Welford accumulation over the matched trials.
    double b_mean = 0.0, b_m2 = 0.0;
    double c_mean = 0.0, c_m2 = 0.0;
    for (long long trial = 0; trial < n_trials; ++trial) {
        const StepEvent event = sample_step(state, rng);
        const bool jumped = state.advantaged[static_cast<std::size_t>(event.mother)] != 0;
        if (jumped != jump) continue;  // rejection on the conditioning event
        const double offspring =
            0.5 * (state.weight1[static_cast<std::size_t>(event.mother)] +
                   state.weight1[static_cast<std::size_t>(event.father)]);
        const double victim = state.weight1[static_cast<std::size_t>(event.killed)];
        double b_next, c_next;
        if (jumped) {
            b_next = split.advantaged_sum + offspring;
            c_next = split.non_advantaged_sum - victim;
        } else {
            b_next = split.advantaged_sum;
            c_next = split.non_advantaged_sum - victim + offspring;
        }
        ++check.n_matched;
        const double count = static_cast<double>(check.n_matched);
        const double b_delta = b_next - b_mean;
        b_mean += b_delta / count;
        b_m2 += b_delta * (b_next - b_mean);
        const double c_delta = c_next - c_mean;
        c_mean += c_delta / count;
        c_m2 += c_delta * (c_next - c_mean);
    }
    if (check.n_matched == 0)
        throw SimulationError("no trial matched the conditioning event (jump = " +
                              std::string(jump ? "true" : "false") + ")");
    check.b_mean = b_mean;
    check.c_mean = c_mean;
    if (check.n_matched > 1) {
        const double count = static_cast<double>(check.n_matched);
        check.b_std_error = std::sqrt(b_m2 / (count - 1.0) / count);
        check.c_std_error = std::sqrt(c_m2 / (count - 1.0) / count);
    }
    return check;
}

std::vector<SweepTimeRow> sweep_time_stats(const PopulationConfig& config, long long n_reps,
                                           std::uint64_t seed) {
    config.validate();
    if (n_reps < 1) throw std::invalid_argument("sweep_time_stats: n_reps >= 1 required");
    const auto n = static_cast<std::size_t>(config.size);
    std::vector<double> means(n + 1, 0.0);
    std::vector<double> m2s(n + 1, 0.0);
    for (long long r = 0; r < n_reps; ++r) {
        Rng rng = Rng::for_replication(seed, static_cast<std::uint64_t>(r));
        const SimResult run = run_to_fixation(config, rng, /*record_sweep=*/true);
        const double count = static_cast<double>(r + 1);
        for (std::size_t k = 1; k <= n; ++k) {
            const double value = static_cast<double>(run.sweep_times[k - 1]);
            const double delta = value - means[k];
            means[k] += delta / count;
            m2s[k] += delta * (value - means[k]);
        }
    }
    std::vector<SweepTimeRow> rows;
    rows.reserve(n);
    double harmonic = 0.0;  // sum_{j<k} 1/j
    for (std::size_t k = 1; k <= n; ++k) {
        SweepTimeRow row;
        row.k = static_cast<long long>(k);
        row.mean_step = means[k];
        row.std_error =
            n_reps > 1 ? std::sqrt(m2s[k] / static_cast<double>(n_reps - 1) /
                                   static_cast<double>(n_reps))
                       : 0.0;
        row.expected_step = static_cast<double>(config.size) * harmonic;
        rows.push_back(row);
        harmonic += 1.0 / static_cast<double>(k);
    }
    return rows;
}

}  // namespace moran
