#include "risktax/rate_ode.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "risktax/path.hpp"

namespace risktax {

namespace {

constexpr double kSlopeThreshold = 1e-12;  // below this the solution is treated as stuck
constexpr double kInf = std::numeric_limits<double>::infinity();

// Dormand-Prince 5(4) tableau for a scalar autonomous RHS.
struct Dp54Step {
    double y_next;
    double error;
};

template <class F>
Dp54Step dp54(const F& f, double y, double h) {
    const double k1 = f(y);
    const double k2 = f(y + h * (0.2 * k1));
    const double k3 = f(y + h * (3.0 / 40 * k1 + 9.0 / 40 * k2));
    const double k4 = f(y + h * (44.0 / 45 * k1 - 56.0 / 15 * k2 + 32.0 / 9 * k3));
    const double k5 = f(y + h * (19372.0 / 6561 * k1 - 25360.0 / 2187 * k2 +
                                 64448.0 / 6561 * k3 - 212.0 / 729 * k4));
    const double k6 = f(y + h * (9017.0 / 3168 * k1 - 355.0 / 33 * k2 + 46732.0 / 5247 * k3 +
                                 49.0 / 176 * k4 - 5103.0 / 18656 * k5));
    const double y5 = y + h * (35.0 / 384 * k1 + 500.0 / 1113 * k3 + 125.0 / 192 * k4 -
                               2187.0 / 6784 * k5 + 11.0 / 84 * k6);
    const double k7 = f(y5);
    const double err = h * (71.0 / 57600 * k1 - 71.0 / 16695 * k3 + 71.0 / 1920 * k4 -
                            17253.0 / 339200 * k5 + 22.0 / 525 * k6 - 1.0 / 40 * k7);
    return {y5, err};
}

double hermite(double t0, double y0, double f0, double t1, double y1, double f1, double t) {
    const double h = t1 - t0;
    const double s = (t - t0) / h;
    const double s2 = s * s;
    const double omu = 1.0 - s;
    return omu * omu * (1.0 + 2.0 * s) * y0 + s2 * (3.0 - 2.0 * s) * y1 +
           s * omu * omu * h * f0 + s2 * (s - 1.0) * h * f1;
}

}  // namespace

RateOdeSolution solve_rate_ode(const RateFunction& rate, double x) {
    if (rate.domain_start() != x)
        throw std::invalid_argument("solve_rate_ode: rate domain does not start at x");
    if (!rate.admissibility().certifies_uniqueness())
        throw admissibility_error(
            "solve_rate_ode: uniqueness not certified (rate carries no monotone or "
            "Lipschitz admissibility certificate)");

    RateOdeSolution sol;
    sol.x_ = x;
    if (rate.is_tabulated()) {
        sol.method_ = OdeMethod::numeric;
        sol.solve_numeric(rate);
    } else {
        sol.method_ = OdeMethod::analytic;
        sol.solve_analytic(rate);
    }
    return sol;
}

void RateOdeSolution::solve_analytic(const RateFunction& rate) {
    t_.push_back(0.0);
    y_.push_back(x_);

    std::vector<double> boundaries;
    std::vector<double> piece_rates;  // rate within each piece before a boundary
    double tail_rate;
    if (const auto* c = std::get_if<ConstantSpec>(&rate.spec())) {
        tail_rate = c->rate;
    } else {
        const auto& p = std::get<PiecewiseConstantSpec>(rate.spec());
        boundaries = p.thresholds;
        piece_rates.assign(p.values.begin(), p.values.end() - 1);
        tail_rate = p.values.back();
    }

    f_in_.push_back(boundaries.empty() ? 1.0 - tail_rate : 1.0 - piece_rates.front());
    f_out_.push_back(f_in_.front());

    // Values are strictly below 1, so every piece has positive slope and the
    // horizon is infinite; the slope-threshold cap applies to tabulated
    // rates only.
    double t = 0.0;
    for (std::size_t i = 0; i < boundaries.size(); ++i) {
        const double g = 1.0 - piece_rates[i];
        t += (boundaries[i] - y_.back()) / g;
        t_.push_back(t);
        y_.push_back(boundaries[i]);
        f_in_.push_back(g);
        const double g_next =
            i + 1 < boundaries.size() ? 1.0 - piece_rates[i + 1] : 1.0 - tail_rate;
        f_out_.push_back(g_next);
        crossing_times_.push_back(t);
        crossing_levels_.push_back(boundaries[i]);
    }
    tail_slope_ = 1.0 - tail_rate;
    y_infinity_ = kInf;
}

void RateOdeSolution::solve_numeric(const RateFunction& rate) {
    const auto& tab = std::get<TabulatedSpec>(rate.spec());
    const bool linear = tab.interpolation == Interpolation::linear;
    // Tighter than the contract's 1e-10 so the cubic Hermite dense output
    // between accepted steps also lands within it.
    const double rtol = 1e-12;
    const double atol = 1e-14;

    t_.push_back(0.0);
    y_.push_back(x_);
    f_in_.push_back(1.0 - tab.rates.front());
    f_out_.push_back(f_in_.front());

    double t = 0.0;
    double y = x_;

    for (std::size_t k = 0; k + 1 < tab.levels.size(); ++k) {
        const double lo = tab.levels[k];
        const double hi = tab.levels[k + 1];
        const double r_lo = tab.rates[k];
        const double b = linear ? (tab.rates[k + 1] - r_lo) / (hi - lo) : 0.0;
        const auto f = [&](double yy) { return 1.0 - (r_lo + b * (yy - lo)); };

        if (f(y) <= kSlopeThreshold) {
            capped_ = true;
            y_infinity_ = y;
            tail_slope_ = 0.0;
            return;
        }

        // Target within the piece; the slope threshold may trip before the
        // upper knot when the interpolated rate climbs toward 1.
        double target = hi;
        bool caps_here = false;
        if (b > 0.0 && f(hi) <= kSlopeThreshold) {
            target = lo + (f(lo) - kSlopeThreshold) / b;
            caps_here = true;
        }

        if (b == 0.0) {
            // Constant RHS: the exact advance is a single linear step.
            const double g = f(y);
            t += (target - y) / g;
            y = target;
            t_.push_back(t);
            y_.push_back(y);
            f_in_.push_back(g);
            f_out_.push_back(g);
        } else {
            double h = 0.1 * (target - y) / std::max(f(y), kSlopeThreshold);
            while (y < target) {
                const double fy = f(y);
                h = std::min(h, 0.35 * (target - lo) / std::max(fy, kSlopeThreshold));
                h = std::min(h, 1.1 * (target - y) / std::max(fy, kSlopeThreshold));
                Dp54Step step = dp54(f, y, h);
                const double tol = atol + rtol * std::fabs(y);
                if (std::fabs(step.error) > tol) {
                    h *= std::max(0.2, 0.9 * std::pow(tol / std::fabs(step.error), 0.2));
                    if (h < 1e-14 * (1.0 + t))
                        throw std::runtime_error("solve_rate_ode: step size underflow");
                    continue;
                }
                if (step.y_next >= target) {
                    // Land exactly on the target by bisecting the step size.
                    double h_lo = 0.0, h_hi = h;
                    for (int it = 0; it < 80; ++it) {
                        const double hm = 0.5 * (h_lo + h_hi);
                        (dp54(f, y, hm).y_next < target ? h_lo : h_hi) = hm;
                    }
                    h = 0.5 * (h_lo + h_hi);
                    t += h;
                    y = target;
                    t_.push_back(t);
                    y_.push_back(y);
                    f_in_.push_back(f(target));
                    f_out_.push_back(f(target));
                    break;
                }
                t += h;
                y = step.y_next;
                t_.push_back(t);
                y_.push_back(y);
                f_in_.push_back(f(y));
                f_out_.push_back(f(y));
                const double grow = 0.9 * std::pow(tol / std::max(std::fabs(step.error),
                                                                  1e-300),
                                                   0.2);
                h *= std::clamp(grow, 0.2, 5.0);
                if (t_.size() > 5'000'000)
                    throw std::runtime_error("solve_rate_ode: node budget exceeded");
            }
        }

        if (caps_here) {
            capped_ = true;
            y_infinity_ = y;
            tail_slope_ = 0.0;
            return;
        }
        crossing_times_.push_back(t);
        crossing_levels_.push_back(y);
        // Patch the outgoing slope at the knot: the next piece starts here.
        const double next_rate = tab.rates[k + 1];
        f_out_.back() = 1.0 - next_rate;
    }

    tail_slope_ = 1.0 - tab.rates.back();
    if (tail_slope_ <= kSlopeThreshold) {
        capped_ = true;
        y_infinity_ = y_.back();
        tail_slope_ = 0.0;
    } else {
        y_infinity_ = kInf;
    }
}

double RateOdeSolution::operator()(double t) const {
    if (t < 0.0) throw std::out_of_range("rate ode: negative time");
    if (t >= t_.back()) {
        if (capped_) return y_infinity_;
        return y_.back() + tail_slope_ * (t - t_.back());
    }
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t k = static_cast<std::size_t>(it - t_.begin()) - 1;
    if (t == t_[k]) return y_[k];
    if (method_ == OdeMethod::analytic)
        return y_[k] + f_out_[k] * (t - t_[k]);
    return hermite(t_[k], y_[k], f_out_[k], t_[k + 1], y_[k + 1], f_in_[k + 1], t);
}

double RateOdeSolution::inverse(double level) const {
    if (level < x_) throw std::out_of_range("rate ode: inverse level below the base point");
    if (level > y_.back()) {
        if (level >= y_infinity_) return infinite_time;
        return t_.back() + (level - y_.back()) / tail_slope_;
    }
    auto it = std::upper_bound(y_.begin(), y_.end(), level);
    const std::size_t k = static_cast<std::size_t>(it - y_.begin()) - 1;
    if (level == y_[k]) return t_[k];
    if (method_ == OdeMethod::analytic)
        return t_[k] + (level - y_[k]) / f_out_[k];

    double lo = t_[k], hi = t_[k + 1];
    for (int iter = 0; iter < 200 && hi - lo > 1e-12; ++iter) {
        const double mid = 0.5 * (lo + hi);
        const double ym =
            hermite(t_[k], y_[k], f_out_[k], t_[k + 1], y_[k + 1], f_in_[k + 1], mid);
        (ym < level ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace risktax
