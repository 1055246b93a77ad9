#pragma once

#include "risktax/levy_model.hpp"
#include "risktax/path.hpp"
#include "risktax/rng.hpp"

namespace risktax {

/// Exact Cramer-Lundberg path: drift segments of slope `premium_rate` between
/// exponentially spaced claim times, each claim a downward Exp jump. No
/// discretization error.
PiecewiseLinearPath generate_cramer_lundberg(const LevyModel& model, double x,
                                             double horizon, RngStream& rng);

/// Piecewise-linear interpolation of Gaussian increments on a uniform grid of
/// spacing `step`. This is the only approximate generator; passage and
/// maximum functionals carry an O(sqrt(step)) discretization allowance.
PiecewiseLinearPath generate_brownian_drift(const LevyModel& model, double x,
                                            double horizon, double step,
                                            RngStream& rng);

}  // namespace risktax
