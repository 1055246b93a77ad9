#include "risktax/exit_problem.hpp"

#include <cmath>
#include <vector>

#include "risktax/quadrature.hpp"
#include "risktax/rate_ode.hpp"

namespace risktax {

namespace {

std::vector<double> rate_split_levels(const RateFunction& rate) {
    if (const auto* p = std::get_if<PiecewiseConstantSpec>(&rate.spec()))
        return p->thresholds;
    if (const auto* t = std::get_if<TabulatedSpec>(&rate.spec())) return t->levels;
    return {};
}

}  // namespace

double exit_transform(const ExitProblemSpec& spec, const ScaleFunction& scale) {
    if (spec.q != scale.q())
        throw std::invalid_argument("exit_transform: discount mismatch with the scale function");
    if (spec.x < 0) throw std::invalid_argument("exit_transform: x must be >= 0");
    if (!(spec.x < spec.a)) throw std::invalid_argument("exit_transform: need x < a");
    if (spec.rate.domain_start() != spec.x)
        throw std::invalid_argument("exit_transform: rate domain does not start at x");

    const RateOdeSolution ode = solve_rate_ode(spec.rate, spec.x);
    if (spec.a >= ode.horizon()) return 0.0;  // the taxed process never reaches a
    if (scale(spec.x) == 0.0) return 0.0;     // ruin is immediate from x

    const auto integrand = [&](double y) {
        return scale.log_derivative(y) / (1.0 - spec.rate(y));
    };
    const QuadratureResult r =
        integrate_with_splits(integrand, spec.x, spec.a, rate_split_levels(spec.rate), 1e-10);
    return std::exp(-r.value);
}

SurvivalResult survival_probability(const LevyModel& model, double x,
                                    const RateFunction& rate) {
    if (rate.domain_start() != x)
        throw std::invalid_argument("survival_probability: rate domain does not start at x");

    SurvivalResult result;
    if (model.psi_derivative_at_zero() <= 0.0) {
        result.note = "psi'(0+) <= 0: the process drifts down, ruin is certain";
        return result;
    }

    const ScaleFunction scale = scale_function(model, 0.0);
    const double w_inf = scale.limit_at_infinity();
    result.phi_0 = scale(x) / w_inf;

    if (scale(x) == 0.0) {
        result.note = "W(x) = 0: ruin is immediate";
        return result;
    }

    const RateOdeSolution ode = solve_rate_ode(rate, x);
    if (ode.horizon_capped()) {
        result.degenerate = true;
        result.note = "taxed maximum capped at " + std::to_string(ode.horizon()) +
                      " (rate slope threshold); survival probability is zero";
        return result;
    }

    // Integrate the exit exponent up to Z where the exact tail
    // log(W_inf / W(Z)) / (1 - tail rate) drops below 1e-10, then drop the
    // tail and report it as the truncation bound.
    const std::vector<double> splits = rate_split_levels(rate);
    const double tail_rate = splits.empty() ? rate(x) : rate(splits.back() + 1.0);
    double z = std::max(x + 1.0, splits.empty() ? x : splits.back());
    auto tail_bound = [&](double zz) {
        return std::log(w_inf / scale(zz)) / (1.0 - tail_rate);
    };
    while (tail_bound(z) > 1e-10) z *= 1.5;

    const auto integrand = [&](double y) {
        return scale.log_derivative(y) / (1.0 - rate(y));
    };
    const QuadratureResult r = integrate_with_splits(integrand, x, z, splits, 1e-10);
    result.phi_delta = std::exp(-r.value);
    result.truncation_bound = tail_bound(z) + r.error_estimate;
    return result;
}

}  // namespace risktax
