#include <benchmark/benchmark.h>

#include "moran/population.hpp"
#include "moran/rng.hpp"
#include "moran/simulate.hpp"

namespace {

void BM_RunToFixation(benchmark::State& state) {
    moran::PopulationConfig config;
    config.size = state.range(0);
    std::uint64_t rep = 0;
    for (auto _ : state) {
        moran::Rng rng = moran::Rng::for_replication(1, rep++);
        benchmark::DoNotOptimize(moran::run_to_fixation(config, rng));
    }
}
BENCHMARK(BM_RunToFixation)->Arg(10)->Arg(100)->Arg(1000);

void BM_GeneDropRun(benchmark::State& state) {
    moran::PopulationConfig config;
    config.size = state.range(0);
    std::uint64_t rep = 0;
    for (auto _ : state) {
        moran::Rng rng = moran::Rng::for_replication(2, rep++);
        benchmark::DoNotOptimize(moran::gene_drop_run(config, rng));
    }
}
BENCHMARK(BM_GeneDropRun)->Arg(10)->Arg(100)->Arg(1000);

void BM_Replicate(benchmark::State& state) {
    moran::PopulationConfig config;
    config.size = 10;
    for (auto _ : state) {
        benchmark::DoNotOptimize(moran::replicate(config, state.range(0), 3,
                                                  moran::Estimator::weights));
    }
}
BENCHMARK(BM_Replicate)->Arg(1000)->Arg(10000);

void BM_SingleStep(benchmark::State& state) {
    moran::PopulationConfig config;
    config.size = state.range(0);
    moran::Rng rng(4);
    moran::PopulationState population = moran::new_population(config);
    for (auto _ : state) {
        if (population.fixed()) population = moran::new_population(config);
        const moran::StepEvent event = moran::sample_step(population, rng);
        benchmark::DoNotOptimize(moran::apply_step(population, event));
    }
}
BENCHMARK(BM_SingleStep)->Arg(100)->Arg(10000);

}  // namespace
