#include <benchmark/benchmark.h>

#include "bigjump/j1.hpp"
#include "bigjump/rng.hpp"

using namespace bigjump;

namespace {

StepPath random_path(RngStream& rng, int jumps) {
    std::vector<Jump> js;
    for (int i = 0; i < jumps; ++i) {
        js.push_back({0.05 + 0.9 * rng.uniform_co(),
                      (rng.uniform() < 0.5 ? -1.0 : 1.0) * (0.25 + rng.uniform())});
    }
    return StepPath(js);
}

void BM_j1_distance(benchmark::State& state) {
    RngStream rng(11, 0);
    const int jumps = static_cast<int>(state.range(0));
    const StepPath x = random_path(rng, jumps);
    const StepPath y = random_path(rng, jumps);
    for (auto _ : state) {
        benchmark::DoNotOptimize(j1_distance(x, y, 1e-6));
    }
}
BENCHMARK(BM_j1_distance)->Arg(2)->Arg(5)->Arg(20);

}  // namespace

BENCHMARK_MAIN();
