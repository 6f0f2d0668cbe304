#include <benchmark/benchmark.h>

#include "moran/asymptotics.hpp"
#include "moran/recurrence.hpp"

namespace {

void BM_IterateFloat(benchmark::State& state) {
    const long long n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moran::expected_fixation_weight(n));
    }
}
BENCHMARK(BM_IterateFloat)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_IterateRational(benchmark::State& state) {
    const long long n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moran::expected_fixation_weight_rational(n));
    }
}
BENCHMARK(BM_IterateRational)->Arg(20)->Arg(50)->Arg(200);

void BM_XClosedFormAll(benchmark::State& state) {
    const long long n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moran::x_closed_form_all(n));
    }
}
BENCHMARK(BM_XClosedFormAll)->Arg(1000)->Arg(10000);

void BM_SmallestPassingC(benchmark::State& state) {
    const long long n = state.range(0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(moran::smallest_passing_c(n));
    }
}
BENCHMARK(BM_SmallestPassingC)->Arg(1000)->Arg(10000);

}  // namespace
