#include <benchmark/benchmark.h>

#include "risktax/generators.hpp"

using namespace risktax;

namespace {

void BM_GenerateCramerLundberg(benchmark::State& state) {
    const auto model = LevyModel::cramer_lundberg(2.0, 1.0, 1.0);
    const double horizon = static_cast<double>(state.range(0));
    std::uint64_t stream = 0;
    for (auto _ : state) {
        RngStream rng(1, stream++);
        benchmark::DoNotOptimize(generate_cramer_lundberg(model, 10.0, horizon, rng));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_GenerateCramerLundberg)->Arg(50)->Arg(500);

void BM_RunningMax(benchmark::State& state) {
    const auto model = LevyModel::cramer_lundberg(2.0, 1.0, 1.0);
    RngStream rng(2);
    const auto path = generate_cramer_lundberg(model, 10.0, 500.0, rng);
    double t = 0.0;
    for (auto _ : state) {
        t += 0.37;
        if (t > 500.0) t -= 500.0;
        benchmark::DoNotOptimize(path.running_max(t));
    }
}
BENCHMARK(BM_RunningMax);

void BM_FirstPassageDown(benchmark::State& state) {
    const auto model = LevyModel::cramer_lundberg(2.0, 1.0, 1.0);
    std::uint64_t stream = 0;
    for (auto _ : state) {
        state.PauseTiming();
        RngStream rng(3, stream++);
        const auto path = generate_cramer_lundberg(model, 5.0, 200.0, rng);
        state.ResumeTiming();
        benchmark::DoNotOptimize(path.first_passage(0.0, Direction::down));
    }
}
BENCHMARK(BM_FirstPassageDown);

}  // namespace
