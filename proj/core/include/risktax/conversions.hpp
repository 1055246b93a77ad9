#pragma once

#include "risktax/gamma_bar.hpp"
#include "risktax/rate_function.hpp"
#include "risktax/rate_ode.hpp"

namespace risktax {

/// Converts a latent rate anchored at x into the natural rate of the same tax
/// process: the composition of the latent rate with the inverse accumulated
/// net-of-tax map. Constant and piecewise-constant shapes convert exactly
/// (thresholds mapped through the forward map); tabulated shapes are
/// re-tabulated on the image grid, exact at the knots.
RateFunction latent_to_natural(const RateFunction& latent_rate, double x);

/// Converts a natural rate anchored at x into the latent rate of the same tax
/// process: the composition of the natural rate with the rate-conversion ODE
/// solution. Piecewise-constant thresholds map to x + (exact crossing times);
/// tabulated shapes are re-tabulated at the knot-crossing times. Requires an
/// admissible rate (the ODE gate propagates).
RateFunction natural_to_latent(const RateFunction& natural_rate, double x);

/// As above, reusing an already computed ODE solution.
RateFunction natural_to_latent(const RateFunction& natural_rate,
                               const RateOdeSolution& ode);

}  // namespace risktax
