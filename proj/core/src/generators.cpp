#include "risktax/generators.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace risktax {

PiecewiseLinearPath generate_cramer_lundberg(const LevyModel& model, double x,
                                             double horizon, RngStream& rng) {
    if (!model.is_cramer_lundberg())
        throw std::invalid_argument("generate_cramer_lundberg: wrong model variant");
    if (!(horizon > 0) || !std::isfinite(horizon))
        throw std::invalid_argument("generate_cramer_lundberg: horizon must be > 0");
    if (!std::isfinite(x))
        throw std::invalid_argument("generate_cramer_lundberg: non-finite start value");

    const auto& m = model.cramer();
    const double mu = 1.0 / m.claim_mean;

    std::vector<Breakpoint> pts;
    pts.push_back({0.0, x, x});

    double t = 0.0;
    double v = x;
    if (m.claim_intensity > 0) {
        for (;;) {
            const double wait = rng.exponential(m.claim_intensity);
            if (!(t + wait < horizon)) break;
            const double tj = t + wait;
            const double before = v + m.premium_rate * (tj - t);
            const double claim = rng.exponential(mu);
            pts.push_back({tj, before, before - claim});
            t = tj;
            v = before - claim;
        }
    }
    const double final_value = v + m.premium_rate * (horizon - t);
    pts.push_back({horizon, final_value, final_value});
    return PiecewiseLinearPath(std::move(pts), horizon);
}

PiecewiseLinearPath generate_brownian_drift(const LevyModel& model, double x,
                                            double horizon, double step,
                                            RngStream& rng) {
    if (!model.is_brownian())
        throw std::invalid_argument("generate_brownian_drift: wrong model variant");
    if (!(step > 0))
        throw std::invalid_argument("generate_brownian_drift: step must be > 0");
    if (step >= horizon)
        throw std::invalid_argument("generate_brownian_drift: step must be < horizon");
    if (!std::isfinite(x))
        throw std::invalid_argument("generate_brownian_drift: non-finite start value");

    const auto& m = model.brownian();

    std::vector<Breakpoint> pts;
    pts.push_back({0.0, x, x});
    double t = 0.0;
    double v = x;
    for (std::size_t k = 1; k * step < horizon; ++k) {
        const double tk = k * step;
        const double dt = tk - t;
        v += m.drift * dt + m.volatility * std::sqrt(dt) * rng.normal();
        pts.push_back({tk, v, v});
        t = tk;
    }
    const double dt = horizon - t;
    v += m.drift * dt + m.volatility * std::sqrt(dt) * rng.normal();
    pts.push_back({horizon, v, v});
    return PiecewiseLinearPath(std::move(pts), horizon);
}

}  // namespace risktax
