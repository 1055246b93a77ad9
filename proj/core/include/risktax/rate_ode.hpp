#pragma once

#include <stdexcept>
#include <vector>

#include "risktax/rate_function.hpp"

namespace risktax {

/// Thrown when a rate carries no uniqueness certificate: computing a possibly
/// non-unique solution would silently falsify every downstream identity.
class admissibility_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class OdeMethod { analytic, numeric };

/// Solution y of dy/dt = 1 - rate(y), y(0) = x: the level the taxed running
/// maximum reaches once the pre-tax maximum has climbed by t. Strictly
/// increasing with slope in [1 - sup rate, 1 - inf rate].
///
/// Constant and piecewise-constant rates are solved exactly (linear advance
/// per piece, crossing times in closed form). Tabulated rates use an adaptive
/// Dormand-Prince 5(4) integrator (relative tolerance 1e-10) split at knot
/// levels, with cubic Hermite dense output between accepted steps.
class RateOdeSolution {
public:
    double base_point() const { return x_; }
    OdeMethod method() const { return method_; }

    /// y(t) for t >= 0. For capped solutions, times past the last node clamp
    /// to the horizon level (the true solution creeps below the 1e-12 slope
    /// threshold there).
    double operator()(double t) const;

    /// Time at which y reaches `level`; exact at stored nodes. Returns the
    /// infinity marker when level >= horizon; level < x is an error.
    double inverse(double level) const;

    /// y at infinity. Infinite unless the slope 1 - rate falls to <= 1e-12,
    /// in which case the first level where that happens is reported and
    /// `horizon_capped` is set.
    double horizon() const { return y_infinity_; }
    bool horizon_capped() const { return capped_; }

    const std::vector<double>& node_times() const { return t_; }
    const std::vector<double>& node_levels() const { return y_; }

    /// Time at which y crosses rate piece boundary i (piecewise rates); these
    /// are the exact thresholds of the equivalent latent rate, shifted by x.
    const std::vector<double>& piece_crossing_times() const { return crossing_times_; }
    const std::vector<double>& piece_crossing_levels() const { return crossing_levels_; }

private:
    friend RateOdeSolution solve_rate_ode(const RateFunction& rate, double x);
    RateOdeSolution() = default;

    void solve_analytic(const RateFunction& rate);
    void solve_numeric(const RateFunction& rate);

    double x_ = 0.0;
    OdeMethod method_ = OdeMethod::analytic;
    std::vector<double> t_;
    std::vector<double> y_;
    std::vector<double> f_in_;   // slope approaching a node from the left
    std::vector<double> f_out_;  // slope leaving a node to the right
    std::vector<double> crossing_times_;
    std::vector<double> crossing_levels_;
    double tail_slope_ = 1.0;
    double y_infinity_ = 0.0;
    bool capped_ = false;
};

/// Solves the rate-conversion ODE for a natural rate anchored at x. Refuses
/// rates without a monotone or Lipschitz admissibility certificate.
RateOdeSolution solve_rate_ode(const RateFunction& rate, double x);

}  // namespace risktax
