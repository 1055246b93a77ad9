#pragma once

#include "risktax/levy_model.hpp"

namespace risktax {

enum class ScaleForm { closed_form, numeric_fallback };

/// The q-scale function of the driving process: zero on (-inf, 0),
/// characterised on [0, inf) by the Laplace transform
/// integral_0^inf exp(-lambda z) W(z) dz = 1 / (psi(lambda) - q) for lambda
/// above the largest root of psi = q.
///
/// Both supported models give rational psi, so W is a two-exponential closed
/// form: the roots come from a stable quadratic solve and the coefficients
/// from partial fractions of 1/(psi - q). A repeated root (q = 0 at zero
/// drift) degenerates to the linear form. numeric_fallback is an unused
/// extension point.
class ScaleFunction {
public:
    const LevyModel& model() const { return model_; }
    double q() const { return q_; }
    ScaleForm form() const { return ScaleForm::closed_form; }

    double operator()(double z) const;

    /// Right-derivative density on [0, inf); the exit integrals only see it
    /// through a.e. values.
    double derivative(double z) const;

    /// W'(z)/W(z), evaluated in an overflow-free form; z > 0.
    double log_derivative(double z) const;

    /// Largest root of psi(lambda) = q; the Laplace identity holds above it.
    double phi() const { return root_plus_; }

    /// Limit of W at +infinity: finite exactly when q = 0 and the drift is
    /// positive, in which case it equals 1 / psi'(0+).
    double limit_at_infinity() const;

private:
    friend ScaleFunction scale_function(const LevyModel& model, double q);
    ScaleFunction(LevyModel model, double q);

    LevyModel model_;
    double q_;
    bool repeated_root_ = false;
    double root_plus_ = 0.0;   // r1 >= r2
    double root_minus_ = 0.0;
    double coef_plus_ = 0.0;   // W(z) = coef_plus e^{r1 z} + coef_minus e^{r2 z}
    double coef_minus_ = 0.0;
    double lin_a_ = 0.0;       // repeated root: W(z) = lin_a + lin_b z
    double lin_b_ = 0.0;
};

ScaleFunction scale_function(const LevyModel& model, double q);

}  // namespace risktax
