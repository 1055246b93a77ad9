#pragma once

#include <string>

#include "risktax/levy_model.hpp"
#include "risktax/rate_function.hpp"
#include "risktax/scale_function.hpp"

namespace risktax {

/// Two-sided exit data for the taxed process: reach `a` before passing below
/// zero, discounted at rate `q`, under the natural rate anchored at `x`.
struct ExitProblemSpec {
    double x;           // start level, 0 <= x < a
    double a;           // upper level
    double q = 0.0;     // discount
    RateFunction rate;  // natural rate on [x, infinity)
};

/// E_x[e^{-q tau_a^+} 1{tau_a^+ < tau_0^-}] for the taxed process:
/// exp(-integral_x^a W'(y) / (W(y) (1 - rate(y))) dy), by adaptive quadrature
/// (absolute tolerance 1e-10) split at the rate's thresholds. Returns exactly
/// 0 when `a` lies at or above the taxed-maximum ceiling, and when W(x) = 0.
double exit_transform(const ExitProblemSpec& spec, const ScaleFunction& scale);

struct SurvivalResult {
    double phi_delta = 0.0;  // survival probability with tax
    double phi_0 = 0.0;      // survival probability without tax
    bool degenerate = false; // taxed maximum capped: survival forced to zero
    double truncation_bound = 0.0;  // dropped tail plus quadrature error
    std::string note;
};

/// Survival probabilities with and without tax. phi_0 is closed form
/// (W(x) / W(infinity)); phi_delta integrates the exit exponent up to the
/// level where the closed-form tail bound drops below 1e-10 and reports the
/// dropped tail. Zero drift or the capped-ceiling branch short-circuit to 0
/// with a reason.
SurvivalResult survival_probability(const LevyModel& model, double x,
                                    const RateFunction& rate);

}  // namespace risktax
