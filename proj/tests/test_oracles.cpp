#include <cmath>

#include "doctest.h"
#include "risktax/generators.hpp"
#include "risktax/oracles.hpp"
#include "risktax/taxed_path.hpp"
#include "test_helpers.hpp"

using namespace risktax;

namespace {

PiecewiseLinearPath flat_path(double x, double horizon) {
    return PiecewiseLinearPath({{0.0, x, x}, {horizon, x, x}}, horizon);
}

double max_breakpoint_deviation(const TaxedPath& oracle, const TaxedPath& closed) {
    double worst = 0.0;
    for (const auto& bp : closed.pre_tax().breakpoints())
        worst = std::max(worst, std::fabs(oracle.value(bp.time) - closed.value(bp.time)));
    return worst;
}

}  // namespace

TEST_CASE("stieltjes oracle is exact for constant rates") {
    auto model = rt_test::reference_cl_model();
    RngStream rng(21);
    const auto path = generate_cramer_lundberg(model, 4.0, 15.0, rng);
    const auto gamma = RateFunction::constant(4.0, 0.45);
    const auto oracle = stieltjes_oracle(path, gamma, 0.5);
    const auto closed = apply_latent_tax(path, gamma);
    CHECK(max_breakpoint_deviation(oracle, closed) <= 1e-12);
}

TEST_CASE("flat path pays no tax under any rate") {
    const auto path = flat_path(3.0, 8.0);
    const auto oracle = stieltjes_oracle(path, RateFunction::two_piece(3.0, 5.0, 0.3, 0.9), 0.1);
    for (double t = 0.0; t <= 8.0; t += 0.25) CHECK(oracle.value(t) == 3.0);
}

TEST_CASE("euler oracle is exact for zero and constant rates") {
    auto model = rt_test::reference_cl_model();
    RngStream rng(22);
    const auto path = generate_cramer_lundberg(model, 2.0, 12.0, rng);

    const auto zero = euler_fixed_point_oracle(path, RateFunction::constant(2.0, 0.0), 0.25);
    for (const auto& bp : path.breakpoints())
        CHECK(zero.value(bp.time) == doctest::Approx(path.value(bp.time)).epsilon(1e-14));

    // monotone path, constant rate: the recursion telescopes
    auto drift_only = LevyModel::cramer_lundberg(1.0, 0.0, 1.0);
    RngStream rng2(23);
    const auto mono = generate_cramer_lundberg(drift_only, 1.0, 9.0, rng2);
    const auto euler = euler_fixed_point_oracle(mono, RateFunction::constant(1.0, 0.35), 0.2);
    for (double t = 0.0; t <= 9.0; t += 0.2)
        CHECK(euler.value(t) ==
              doctest::Approx(1.0 + 0.65 * (mono.value(t) - 1.0)).epsilon(1e-9));
}

TEST_CASE("oracles converge to the closed forms at first order") {
    auto model = rt_test::reference_cl_model();
    const double x = 5.0;
    // A staircase with many treads spreads crossing events, which makes the
    // halving ratio concentrate near 1/2.
    std::vector<double> thresholds, values;
    for (int i = 0; i < 15; ++i) thresholds.push_back(x + 1.5 + 2.0 * i);
    for (int i = 0; i < 16; ++i) values.push_back(0.05 + 0.05 * i);
    const auto rate = RateFunction::piecewise_constant(x, thresholds, values,
                                                       Admissibility::monotone());

    const double steps[] = {0.01, 0.005, 0.0025};
    double dev_stieltjes[3] = {0, 0, 0};
    double dev_euler[3] = {0, 0, 0};
    const int n_paths = 10;
    for (std::uint64_t s = 0; s < n_paths; ++s) {
        RngStream rng(500, s);
        const auto path = generate_cramer_lundberg(model, x, 20.0, rng);
        const auto latent = apply_latent_tax(path, rate);
        const auto natural = apply_natural_tax(path, rate);
        for (int j = 0; j < 3; ++j) {
            dev_stieltjes[j] +=
                max_breakpoint_deviation(stieltjes_oracle(path, rate, steps[j]), latent);
            dev_euler[j] +=
                max_breakpoint_deviation(euler_fixed_point_oracle(path, rate, steps[j]),
                                         natural);
        }
    }
    for (int j = 0; j < 2; ++j) {
        const double rs = dev_stieltjes[j + 1] / dev_stieltjes[j];
        const double re = dev_euler[j + 1] / dev_euler[j];
        CHECK(rs > 0.3);
        CHECK(rs < 0.7);
        CHECK(re > 0.3);
        CHECK(re < 0.7);
    }
}

TEST_CASE("small-step oracle pins the closed form within 1e-6") {
    // The left-point sum is exact away from rate thresholds, so the whole
    // error sits in the one cell where the running maximum crosses 20 and is
    // bounded by jump * premium * step = 0.1 * 2 * 4e-6 = 8e-7.
    auto model = rt_test::reference_cl_model();
    RngStream rng(24, 1);
    const auto path = generate_cramer_lundberg(model, 7.0, 16.0, rng);
    const auto gamma = RateFunction::two_piece(7.0, 20.0, 0.4, 0.5);
    REQUIRE(path.running_max(16.0) > 20.0);  // the threshold is actually crossed
    const auto closed = apply_latent_tax(path, gamma);
    const auto oracle = stieltjes_oracle(path, gamma, 4e-6);
    CHECK(max_breakpoint_deviation(oracle, closed) <= 1e-6);
}

TEST_CASE("euler oracle validates the natural route for tabulated rates") {
    auto model = rt_test::reference_cl_model();
    RngStream rate_rng(25);
    const auto delta = rt_test::random_monotone_tabulated_rate(rate_rng, 6.0, 15.0);
    RngStream rng(26, 2);
    const auto path = generate_cramer_lundberg(model, 6.0, 18.0, rng);
    const auto closed = apply_natural_tax(path, delta);
    const double step = 1e-3;
    const auto oracle = euler_fixed_point_oracle(path, delta, step);
    // first-order scheme: allow a generous constant times the step
    CHECK(max_breakpoint_deviation(oracle, closed) <= 50.0 * step);
}
