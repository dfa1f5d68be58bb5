#include <benchmark/benchmark.h>

#include "bigjump/simulate.hpp"

using namespace bigjump;

namespace {

LevyModel two_sided() {
    LevyModel m;
    m.pos = TailModel::pareto(1.0, 2.0);
    m.neg = TailModel::pareto(1.0, 2.0);
    return m;
}

void BM_scaled_levy(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    const LevySampler sampler(two_sided(), n, default_grid(n));
    RngStream rng(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler(rng).grid.terminal());
    }
}
BENCHMARK(BM_scaled_levy)->Arg(100)->Arg(400);

void BM_large_jumps(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    LevyModel m = two_sided();
    RngStream rng(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_large_jumps(m, Side::pos, n, rng).size());
    }
}
BENCHMARK(BM_large_jumps)->Arg(100)->Arg(400);

void BM_scaled_rw(benchmark::State& state) {
    const std::uint64_t n = static_cast<std::uint64_t>(state.range(0));
    const IncrementModel inc = IncrementModel::make(1.0, 2.0, 1.0, 2.0, 2.0);
    RngStream rng(1, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_scaled_rw(inc, n, rng).terminal());
    }
}
BENCHMARK(BM_scaled_rw)->Arg(200)->Arg(1000);

void BM_apply_ou_grid(benchmark::State& state) {
    RngStream rng(1, 0);
    const GridPath g = sample_scaled_levy(two_sided(), 100, 2000, rng);
    for (auto _ : state) {
        benchmark::DoNotOptimize(apply_ou(g, 1.0).terminal());
    }
}
BENCHMARK(BM_apply_ou_grid);

}  // namespace

BENCHMARK_MAIN();
