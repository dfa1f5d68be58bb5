#include <benchmark/benchmark.h>

#include "bigjump/experiments.hpp"
#include "bigjump/limit_measures.hpp"

using namespace bigjump;

namespace {

void BM_estimate_C_multiple_optima(benchmark::State& state) {
    const TargetSet A = multiple_optima_set();
    RngStream rng(5, 0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            estimate_C(A, 2.0, 2.0, 1, 0, 0.5, 1.0, 10000, rng).value);
    }
}
BENCHMARK(BM_estimate_C_multiple_optima);

void BM_c11_quadrature(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(C11_ou_quadrature(1.0, 1.0, 1.0, 2.0, 2.0, 1e-6));
    }
}
BENCHMARK(BM_c11_quadrature);

}  // namespace

BENCHMARK_MAIN();
