#include "risktax/gamma_bar.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "risktax/path.hpp"

namespace risktax {

GammaBarMap::GammaBarMap(RateFunction rate) : rate_(std::move(rate)), x_(rate_.domain_start()) {
    levels_.push_back(x_);
    images_.push_back(x_);

    const RateSpec& spec = rate_.spec();
    if (const auto* c = std::get_if<ConstantSpec>(&spec)) {
        tail_rate_ = c->rate;
    } else if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec)) {
        for (std::size_t i = 0; i < p->thresholds.size(); ++i) {
            rate0_.push_back(p->values[i]);
            slope_.push_back(0.0);
            levels_.push_back(p->thresholds[i]);
        }
        tail_rate_ = p->values.back();
    } else {
        const auto& t = std::get<TabulatedSpec>(spec);
        for (std::size_t i = 0; i + 1 < t.levels.size(); ++i) {
            rate0_.push_back(t.rates[i]);
            if (t.interpolation == Interpolation::linear)
                slope_.push_back((t.rates[i + 1] - t.rates[i]) /
                                 (t.levels[i + 1] - t.levels[i]));
            else
                slope_.push_back(0.0);
            levels_.push_back(t.levels[i + 1]);
        }
        tail_rate_ = t.rates.back();
    }

    // Accumulate exact piece integrals of (1 - rate).
    for (std::size_t i = 0; i + 1 < levels_.size(); ++i) {
        const double w = levels_[i + 1] - levels_[i];
        const double integral = (1.0 - rate0_[i]) * w - 0.5 * slope_[i] * w * w;
        images_.push_back(images_[i] + integral);
    }
    for (std::size_t i = 1; i < images_.size(); ++i)
        if (!(images_[i] > images_[i - 1]))
            throw std::logic_error("gamma_bar: map not strictly increasing");
    limit_ = std::numeric_limits<double>::infinity();
}

GammaBarMap gamma_bar(const RateFunction& rate, double x) {
    if (rate.domain_start() != x)
        throw std::invalid_argument("gamma_bar: rate domain does not start at x");
    return GammaBarMap(rate);
}

double GammaBarMap::operator()(double s) const {
    if (s < x_) throw std::out_of_range("gamma_bar: argument below the base point");
    auto it = std::upper_bound(levels_.begin(), levels_.end(), s);
    const std::size_t k = static_cast<std::size_t>(it - levels_.begin()) - 1;
    if (s == levels_[k]) return images_[k];
    const double w = s - levels_[k];
    if (k + 1 == levels_.size())  // constant tail
        return images_[k] + (1.0 - tail_rate_) * w;
    return images_[k] + (1.0 - rate0_[k]) * w - 0.5 * slope_[k] * w * w;
}

double GammaBarMap::inverse(double u) const {
    if (u < x_) throw std::out_of_range("gamma_bar: inverse argument below the base point");
    if (u >= limit_) return infinite_time;
    auto it = std::upper_bound(images_.begin(), images_.end(), u);
    const std::size_t k = static_cast<std::size_t>(it - images_.begin()) - 1;
    if (u == images_[k]) return levels_[k];
    const double d = u - images_[k];
    if (k + 1 == levels_.size()) return levels_[k] + d / (1.0 - tail_rate_);
    if (slope_[k] == 0.0) return levels_[k] + d / (1.0 - rate0_[k]);

    // Quadratic piece (linear-interpolated table): monotone bisection.
    double lo = levels_[k], hi = levels_[k + 1];
    const auto f = [&](double s) {
        const double w = s - levels_[k];
        return (1.0 - rate0_[k]) * w - 0.5 * slope_[k] * w * w - d;
    };
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace risktax
