#include <benchmark/benchmark.h>

#include "risktax/conversions.hpp"
#include "risktax/generators.hpp"
#include "risktax/taxed_path.hpp"

using namespace risktax;

namespace {

void BM_ApplyLatentTaxEval(benchmark::State& state) {
    const auto model = LevyModel::cramer_lundberg(2.0, 1.0, 1.0);
    RngStream rng(4);
    const auto path = generate_cramer_lundberg(model, 7.0, 200.0, rng);
    const auto taxed = apply_latent_tax(path, RateFunction::two_piece(7.0, 20.0, 0.4, 0.9));
    double t = 0.0;
    for (auto _ : state) {
        t += 0.31;
        if (t > 200.0) t -= 200.0;
        benchmark::DoNotOptimize(taxed.value(t));
    }
}
BENCHMARK(BM_ApplyLatentTaxEval);

void BM_SolveRateOdeTabulated(benchmark::State& state) {
    std::vector<double> levels, rates;
    const int knots = static_cast<int>(state.range(0));
    for (int i = 0; i < knots; ++i) {
        levels.push_back(2.0 * i);
        rates.push_back(0.8 * i / knots);
    }
    const auto rate = RateFunction::tabulated(0.0, levels, rates, Interpolation::linear,
                                              Admissibility::monotone());
    for (auto _ : state) benchmark::DoNotOptimize(solve_rate_ode(rate, 0.0));
}
BENCHMARK(BM_SolveRateOdeTabulated)->Arg(8)->Arg(64);

void BM_ConversionRoundTrip(benchmark::State& state) {
    const auto gamma = RateFunction::piecewise_constant(
        0.0, {5.0, 10.0, 15.0}, {0.1, 0.3, 0.5, 0.7}, Admissibility::monotone());
    for (auto _ : state)
        benchmark::DoNotOptimize(natural_to_latent(latent_to_natural(gamma, 0.0), 0.0));
}
BENCHMARK(BM_ConversionRoundTrip);

}  // namespace
