#include "risktax/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace risktax {

namespace {

std::vector<double> refined_grid(const PiecewiseLinearPath& path, double step) {
    if (!(step > 0)) throw std::invalid_argument("oracle: step must be > 0");
    std::vector<double> times;
    const double T = path.horizon();
    times.reserve(static_cast<std::size_t>(T / step) + path.breakpoints().size() + 2);
    for (double t = 0.0; t < T; t += step) times.push_back(t);
    times.push_back(T);
    for (const auto& p : path.breakpoints()) times.push_back(p.time);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    return times;
}

}  // namespace

TaxedPath stieltjes_oracle(const PiecewiseLinearPath& path, const RateFunction& gamma,
                           double step) {
    if (gamma.domain_start() != path.start_value())
        throw std::invalid_argument("stieltjes_oracle: rate domain mismatch");
    std::vector<double> times = refined_grid(path, step);
    std::vector<double> values(times.size());

    double tax = 0.0;
    double xbar_prev = path.start_value();
    values[0] = path.start_value();
    for (std::size_t j = 1; j < times.size(); ++j) {
        const double xbar = path.running_max(times[j]);
        tax += gamma(xbar_prev) * (xbar - xbar_prev);
        values[j] = path.value(times[j]) - tax;
        xbar_prev = xbar;
    }
    return TaxedPath::sampled(path, TaxRegime::latent, gamma, std::move(times),
                              std::move(values));
}

TaxedPath euler_fixed_point_oracle(const PiecewiseLinearPath& path,
                                   const RateFunction& delta, double step) {
    if (delta.domain_start() != path.start_value())
        throw std::invalid_argument("euler_fixed_point_oracle: rate domain mismatch");
    std::vector<double> times = refined_grid(path, step);
    std::vector<double> values(times.size());

    double v = path.start_value();
    double vbar = v;
    double x_prev = v;
    double xbar_prev = v;
    values[0] = v;
    for (std::size_t j = 1; j < times.size(); ++j) {
        const double x = path.value(times[j]);
        const double xbar = path.running_max(times[j]);
        v += (x - x_prev) - delta(vbar) * (xbar - xbar_prev);
        vbar = std::max(vbar, v);
        values[j] = v;
        x_prev = x;
        xbar_prev = xbar;
    }
    return TaxedPath::sampled(path, TaxRegime::natural, delta, std::move(times),
                              std::move(values));
}

}  // namespace risktax
