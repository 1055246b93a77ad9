#include "risktax/levy_model.hpp"

#include <cmath>
#include <stdexcept>

namespace risktax {

LevyModel::LevyModel(std::variant<CramerLundberg, BrownianWithDrift> v)
    : v_(std::move(v)) {
    validate();
}

LevyModel LevyModel::cramer_lundberg(double premium_rate, double claim_intensity,
                                     double claim_mean) {
    return LevyModel(CramerLundberg{premium_rate, claim_intensity, claim_mean});
}

LevyModel LevyModel::brownian_with_drift(double drift, double volatility) {
    return LevyModel(BrownianWithDrift{drift, volatility});
}

void LevyModel::validate() const {
    if (is_cramer_lundberg()) {
        const auto& m = cramer();
        if (!std::isfinite(m.premium_rate) || !std::isfinite(m.claim_intensity) ||
            !std::isfinite(m.claim_mean))
            throw std::invalid_argument("levy model: non-finite parameter");
        if (!(m.premium_rate > 0))
            throw std::invalid_argument("levy model: premium_rate must be > 0");
        if (m.claim_intensity < 0)
            throw std::invalid_argument("levy model: claim_intensity must be >= 0");
        if (!(m.claim_mean > 0))
            throw std::invalid_argument("levy model: claim_mean must be > 0");
    } else {
        const auto& m = brownian();
        if (!std::isfinite(m.drift) || !std::isfinite(m.volatility))
            throw std::invalid_argument("levy model: non-finite parameter");
        if (!(m.volatility > 0))
            throw std::invalid_argument("levy model: volatility must be > 0");
    }

    // psi(0) = 0 holds by construction; convexity is checked on a grid.
    const double scale = psi_derivative_at_zero();
    const double thetas[] = {0.0, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 8.0};
    const double tol = 1e-9 * (1.0 + std::fabs(scale));
    for (std::size_t i = 0; i + 2 < std::size(thetas); ++i) {
        const double h1 = thetas[i + 1] - thetas[i];
        const double h2 = thetas[i + 2] - thetas[i + 1];
        const double d1 = (laplace_exponent(thetas[i + 1]) - laplace_exponent(thetas[i])) / h1;
        const double d2 = (laplace_exponent(thetas[i + 2]) - laplace_exponent(thetas[i + 1])) / h2;
        if (d2 < d1 - tol)
            throw std::logic_error("levy model: laplace exponent not convex on grid");
    }
}

double LevyModel::laplace_exponent(double theta) const {
    if (is_cramer_lundberg()) {
        const auto& m = cramer();
        const double mu = 1.0 / m.claim_mean;
        return m.premium_rate * theta - m.claim_intensity * theta / (mu + theta);
    }
    const auto& m = brownian();
    return m.drift * theta + 0.5 * m.volatility * m.volatility * theta * theta;
}

double LevyModel::psi_derivative_at_zero() const {
    if (is_cramer_lundberg()) {
        const auto& m = cramer();
        return m.premium_rate - m.claim_intensity * m.claim_mean;
    }
    return brownian().drift;
}

}  // namespace risktax
