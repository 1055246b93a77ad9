#include <benchmark/benchmark.h>

#include "risktax/exit_problem.hpp"
#include "risktax/monte_carlo.hpp"

using namespace risktax;

namespace {

void BM_ExitTransform(benchmark::State& state) {
    const auto model = LevyModel::cramer_lundberg(2.0, 1.0, 1.0);
    const auto w = scale_function(model, 0.0);
    const auto rate = RateFunction::piecewise_constant(5.0, {10.0}, {0.2, 0.5},
                                                       Admissibility::monotone());
    for (auto _ : state)
        benchmark::DoNotOptimize(exit_transform({5.0, 15.0, 0.0, rate}, w));
}
BENCHMARK(BM_ExitTransform);

void BM_SurvivalProbability(benchmark::State& state) {
    const auto model = LevyModel::cramer_lundberg(2.0, 1.0, 1.0);
    const auto rate = RateFunction::constant(5.0, 0.5);
    for (auto _ : state)
        benchmark::DoNotOptimize(survival_probability(model, 5.0, rate));
}
BENCHMARK(BM_SurvivalProbability);

void BM_MonteCarloExit(benchmark::State& state) {
    const auto model = LevyModel::cramer_lundberg(2.0, 1.0, 1.0);
    const auto rate = RateFunction::constant(5.0, 0.2);
    MCConfig cfg;
    cfg.n_paths = static_cast<std::size_t>(state.range(0));
    cfg.horizon = 200.0;
    for (auto _ : state)
        benchmark::DoNotOptimize(estimate_exit_transform(model, 5.0, 15.0, 0.0, rate, cfg));
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MonteCarloExit)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace
