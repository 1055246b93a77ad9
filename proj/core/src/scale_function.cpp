#include "risktax/scale_function.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace risktax {

namespace {

// Roots of a x^2 + b x + c = 0 with a > 0 and non-negative discriminant,
// via the cancellation-free formula. Returns {larger, smaller}.
struct Roots {
    double plus;
    double minus;
    bool repeated;
};

Roots stable_quadratic(double a, double b, double c) {
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0) throw std::logic_error("scale function: negative discriminant");
    if (disc == 0) return {-b / (2.0 * a), -b / (2.0 * a), true};
    const double s = std::sqrt(disc);
    const double t = -0.5 * (b + std::copysign(s, b));
    double r1 = t / a;
    double r2 = (t != 0.0) ? c / t : -b / a;  // product of roots = c/a
    if (r1 < r2) std::swap(r1, r2);
    return {r1, r2, false};
}

}  // namespace

ScaleFunction::ScaleFunction(LevyModel model, double q) : model_(std::move(model)), q_(q) {
    if (q < 0) throw std::invalid_argument("scale function: q must be >= 0");

    if (model_.is_cramer_lundberg()) {
        const auto& m = model_.cramer();
        const double c = m.premium_rate;
        const double mu = 1.0 / m.claim_mean;
        const double lambda = m.claim_intensity;
        // psi(th) - q = (c th^2 + (c mu - lambda - q) th - q mu) / (mu + th)
        const double b = c * mu - lambda - q;
        Roots r;
        if (q == 0.0)
            r = b == 0.0 ? Roots{0.0, 0.0, true}
                         : Roots{std::max(0.0, -b / c), std::min(0.0, -b / c), false};
        else
            r = stable_quadratic(c, b, -q * mu);
        repeated_root_ = r.repeated;
        root_plus_ = r.plus;
        root_minus_ = r.minus;
        if (repeated_root_) {
            // q = 0, zero drift (c mu = lambda): 1/psi = (mu + th)/(c th^2).
            lin_a_ = 1.0 / c;
            lin_b_ = mu / c;
        } else {
            coef_plus_ = (mu + root_plus_) / (c * (root_plus_ - root_minus_));
            coef_minus_ = (mu + root_minus_) / (c * (root_minus_ - root_plus_));
        }
        return;
    }

    const auto& m = model_.brownian();
    const double half_var = 0.5 * m.volatility * m.volatility;
    Roots r;
    if (q == 0.0)
        r = m.drift == 0.0
                ? Roots{0.0, 0.0, true}
                : Roots{std::max(0.0, -m.drift / half_var), std::min(0.0, -m.drift / half_var),
                        false};
    else
        r = stable_quadratic(half_var, m.drift, -q);
    repeated_root_ = r.repeated;
    root_plus_ = r.plus;
    root_minus_ = r.minus;
    if (repeated_root_) {
        // q = 0, driftless: 1/psi = 1/(half_var th^2).
        lin_a_ = 0.0;
        lin_b_ = 1.0 / half_var;
    } else {
        const double span = root_plus_ - root_minus_;
        coef_plus_ = 1.0 / (half_var * span);
        coef_minus_ = -coef_plus_;
    }
}

ScaleFunction scale_function(const LevyModel& model, double q) {
    return ScaleFunction(model, q);
}

double ScaleFunction::operator()(double z) const {
    if (z < 0) return 0.0;
    if (repeated_root_) return lin_a_ + lin_b_ * z;
    return coef_plus_ * std::exp(root_plus_ * z) + coef_minus_ * std::exp(root_minus_ * z);
}

double ScaleFunction::derivative(double z) const {
    if (z < 0) return 0.0;
    if (repeated_root_) return lin_b_;
    return coef_plus_ * root_plus_ * std::exp(root_plus_ * z) +
           coef_minus_ * root_minus_ * std::exp(root_minus_ * z);
}

double ScaleFunction::log_derivative(double z) const {
    if (repeated_root_) return lin_b_ / (lin_a_ + lin_b_ * z);
    // Factor out the growing exponential: decay = e^{(r2 - r1) z} <= 1.
    const double decay = std::exp((root_minus_ - root_plus_) * z);
    return (coef_plus_ * root_plus_ + coef_minus_ * root_minus_ * decay) /
           (coef_plus_ + coef_minus_ * decay);
}

double ScaleFunction::limit_at_infinity() const {
    if (q_ == 0.0 && model_.psi_derivative_at_zero() > 0.0) return coef_plus_;
    return std::numeric_limits<double>::infinity();
}

}  // namespace risktax
