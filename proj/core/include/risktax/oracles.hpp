#pragma once

#include "risktax/path.hpp"
#include "risktax/rate_function.hpp"
#include "risktax/taxed_path.hpp"

namespace risktax {

/// Direct left-point discretization of the latent tax integral on a uniform
/// grid refined with every path breakpoint. First-order in `step` (error
/// bounded by the total variation of rate(Xbar) times the step); exact for
/// constant rates. Kept independent of the closed-form evaluators so it can
/// validate them.
TaxedPath stieltjes_oracle(const PiecewiseLinearPath& path, const RateFunction& gamma,
                           double step);

/// Forward recursion of the natural-tax integral equation with the taxed
/// maximum lagged by one grid cell; same grid and error order as the
/// Stieltjes oracle. Independent of the rate-conversion ODE machinery.
TaxedPath euler_fixed_point_oracle(const PiecewiseLinearPath& path,
                                   const RateFunction& delta, double step);

}  // namespace risktax
