#include <cmath>

#include "doctest.h"
#include "risktax/gamma_bar.hpp"
#include "risktax/path.hpp"
#include "test_helpers.hpp"

using namespace risktax;

TEST_CASE("zero rate gives the identity map") {
    const auto map = gamma_bar(RateFunction::constant(2.0, 0.0), 2.0);
    for (double s : {2.0, 3.5, 10.0, 100.0}) CHECK(map(s) == s);
    CHECK(map.inverse(42.0) == 42.0);
}

TEST_CASE("two-level rate maps the threshold per the worked example") {
    // alpha = 0.4 below 20, beta = 0.9 above; the image of 20 from 7 is 14.8,
    // from 10 it is 16.
    const auto from7 = gamma_bar(RateFunction::two_piece(7.0, 20.0, 0.4, 0.9), 7.0);
    CHECK(from7(20.0) == doctest::Approx(14.8).epsilon(1e-14));
    const auto from10 = gamma_bar(RateFunction::two_piece(10.0, 20.0, 0.4, 0.9), 10.0);
    CHECK(from10(20.0) == doctest::Approx(16.0).epsilon(1e-14));
    CHECK(from7(7.0) == 7.0);
}

TEST_CASE("domain mismatch is rejected") {
    CHECK_THROWS_AS(gamma_bar(RateFunction::constant(2.0, 0.1), 3.0), std::invalid_argument);
}

TEST_CASE("forward and inverse compose to the identity") {
    RngStream rng(404);
    for (int rep = 0; rep < 20; ++rep) {
        const double x = -3.0 + 6.0 * rng.uniform01();
        const auto rate = rt_test::random_monotone_piecewise_rate(rng, x, 25.0);
        const auto map = gamma_bar(rate, x);
        for (int i = 0; i < 60; ++i) {
            const double s = x + 40.0 * rng.uniform01();
            CHECK(map.inverse(map(s)) == doctest::Approx(s).epsilon(1e-10));
        }
    }
    // quadratic pieces: linear-interpolated table
    RngStream rng2(405);
    const auto tab = rt_test::random_monotone_tabulated_rate(rng2, 1.0, 12.0);
    const auto map = gamma_bar(tab, 1.0);
    for (int i = 0; i < 60; ++i) {
        const double s = 1.0 + 30.0 * rng2.uniform01();
        CHECK(map.inverse(map(s)) == doctest::Approx(s).epsilon(1e-10));
    }
}

TEST_CASE("sandwich bounds: contraction between 1 - sup rate and 1") {
    RngStream rng(406);
    const double x = 0.0;
    const auto rate = rt_test::random_monotone_piecewise_rate(rng, x, 15.0);
    const auto map = gamma_bar(rate, x);
    const double lo = 1.0 - rate.sup_rate();
    for (int i = 0; i < 200; ++i) {
        double s1 = x + 30.0 * rng.uniform01();
        double s2 = x + 30.0 * rng.uniform01();
        if (s1 > s2) std::swap(s1, s2);
        if (s1 == s2) continue;
        const double gap = map(s2) - map(s1);
        CHECK(gap >= lo * (s2 - s1) - 1e-12);
        CHECK(gap <= (s2 - s1) + 1e-12);
    }
}

TEST_CASE("limit at infinity is infinite for rates bounded below one") {
    const auto map = gamma_bar(RateFunction::two_piece(0.0, 5.0, 0.2, 0.99), 0.0);
    CHECK(is_never(map.limit_at_infinity()));
}

TEST_CASE("closed-form forward map agrees with brute-force quadrature") {
    RngStream rng(407);
    const auto tab = rt_test::random_monotone_tabulated_rate(rng, 2.0, 10.0);
    const auto map = gamma_bar(tab, 2.0);
    for (double s : {3.0, 7.5, 13.2, 25.0}) {
        // midpoint rule at fine resolution
        const int n = 200000;
        const double h = (s - 2.0) / n;
        double acc = 2.0;
        for (int i = 0; i < n; ++i) acc += (1.0 - tab(2.0 + (i + 0.5) * h)) * h;
        CHECK(map(s) == doctest::Approx(acc).epsilon(1e-9));
    }
}
