#include "risktax/rate_function.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace risktax {

Admissibility Admissibility::lipschitz(double bound) {
    if (!(bound >= 0) || !std::isfinite(bound))
        throw std::invalid_argument("admissibility: lipschitz bound must be finite and >= 0");
    return Admissibility(Kind::lipschitz, bound);
}

namespace {

void check_unit_interval(const std::vector<double>& values, const char* what) {
    for (double v : values)
        if (!(v >= 0.0) || !(v < 1.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(what) + ": rate values must lie in [0, 1)");
}

void check_ascending(const std::vector<double>& xs, const char* what) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i - 1] < xs[i]))
            throw std::invalid_argument(std::string(what) + ": levels must be strictly ascending");
}

bool non_decreasing(const std::vector<double>& xs) {
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (xs[i] < xs[i - 1]) return false;
    return true;
}

double eval_spec(const RateSpec& spec, double z) {
    if (const auto* c = std::get_if<ConstantSpec>(&spec)) return c->rate;
    if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec)) {
        const auto it = std::lower_bound(p->thresholds.begin(), p->thresholds.end(), z);
        return p->values[static_cast<std::size_t>(it - p->thresholds.begin())];
    }
    const auto& t = std::get<TabulatedSpec>(spec);
    if (z >= t.levels.back()) return t.rates.back();
    const auto it = std::upper_bound(t.levels.begin(), t.levels.end(), z);
    const std::size_t k = static_cast<std::size_t>(it - t.levels.begin()) - 1;
    if (t.interpolation == Interpolation::step) return t.rates[k];
    const double w = (z - t.levels[k]) / (t.levels[k + 1] - t.levels[k]);
    return t.rates[k] + w * (t.rates[k + 1] - t.rates[k]);
}

}  // namespace

RateFunction::RateFunction(double domain_start, RateSpec spec, Admissibility adm)
    : domain_start_(domain_start), spec_(std::move(spec)), adm_(adm) {
    // A constant rate is monotone whatever the caller declared.
    if (std::holds_alternative<ConstantSpec>(spec_) &&
        adm_.kind() == Admissibility::Kind::none)
        adm_ = Admissibility::monotone();
    validate();
    if (const auto* c = std::get_if<ConstantSpec>(&spec_)) {
        sup_ = inf_ = c->rate;
    } else if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec_)) {
        sup_ = *std::max_element(p->values.begin(), p->values.end());
        inf_ = *std::min_element(p->values.begin(), p->values.end());
    } else {
        const auto& t = std::get<TabulatedSpec>(spec_);
        sup_ = *std::max_element(t.rates.begin(), t.rates.end());
        inf_ = *std::min_element(t.rates.begin(), t.rates.end());
    }
}

void RateFunction::validate() const {
    if (!std::isfinite(domain_start_))
        throw std::invalid_argument("rate: non-finite domain start");

    if (const auto* c = std::get_if<ConstantSpec>(&spec_)) {
        check_unit_interval({c->rate}, "rate");
    } else if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec_)) {
        if (p->values.size() != p->thresholds.size() + 1)
            throw std::invalid_argument("rate: need one more value than thresholds");
        if (p->thresholds.empty())
            throw std::invalid_argument("rate: piecewise spec needs at least one threshold");
        check_ascending(p->thresholds, "rate");
        check_unit_interval(p->values, "rate");
        if (!(p->thresholds.front() > domain_start_))
            throw std::invalid_argument("rate: thresholds must lie above the domain start");
        if (adm_.kind() == Admissibility::Kind::monotone && !non_decreasing(p->values))
            throw std::invalid_argument("rate: monotone certificate but values decrease");
        if (adm_.kind() == Admissibility::Kind::lipschitz) {
            for (std::size_t i = 1; i < p->values.size(); ++i)
                if (p->values[i] != p->values[i - 1])
                    throw std::invalid_argument(
                        "rate: lipschitz certificate invalid for a discontinuous rate");
        }
    } else {
        const auto& t = std::get<TabulatedSpec>(spec_);
        if (t.levels.size() != t.rates.size() || t.levels.size() < 2)
            throw std::invalid_argument("rate: tabulated spec needs >= 2 (level, rate) knots");
        check_ascending(t.levels, "rate");
        check_unit_interval(t.rates, "rate");
        if (t.levels.front() != domain_start_)
            throw std::invalid_argument("rate: first knot must sit at the domain start");
        if (adm_.kind() == Admissibility::Kind::monotone && !non_decreasing(t.rates))
            throw std::invalid_argument("rate: monotone certificate but rates decrease");
        if (adm_.kind() == Admissibility::Kind::lipschitz) {
            if (t.interpolation != Interpolation::linear)
                throw std::invalid_argument(
                    "rate: lipschitz certificate requires linear interpolation");
            for (std::size_t i = 1; i < t.levels.size(); ++i) {
                const double slope =
                    std::fabs(t.rates[i] - t.rates[i - 1]) / (t.levels[i] - t.levels[i - 1]);
                if (slope > adm_.lipschitz_bound() * (1.0 + 1e-12))
                    throw std::invalid_argument("rate: knot slope exceeds the lipschitz bound");
            }
        }
    }
}

RateFunction RateFunction::constant(double domain_start, double rate, Admissibility adm) {
    return RateFunction(domain_start, ConstantSpec{rate}, adm);
}

RateFunction RateFunction::piecewise_constant(double domain_start,
                                              std::vector<double> thresholds,
                                              std::vector<double> values,
                                              Admissibility adm) {
    return RateFunction(domain_start,
                        PiecewiseConstantSpec{std::move(thresholds), std::move(values)}, adm);
}

RateFunction RateFunction::tabulated(double domain_start, std::vector<double> levels,
                                     std::vector<double> rates, Interpolation interp,
                                     Admissibility adm) {
    return RateFunction(domain_start,
                        TabulatedSpec{std::move(levels), std::move(rates), interp}, adm);
}

RateFunction RateFunction::two_piece(double domain_start, double threshold, double low,
                                     double high) {
    const auto adm = low <= high ? Admissibility::monotone() : Admissibility::none();
    return piecewise_constant(domain_start, {threshold}, {low, high}, adm);
}

double RateFunction::operator()(double z) const {
    if (z < domain_start_)
        throw std::out_of_range("rate: evaluation below the domain start");
    return eval_spec(spec_, z);
}

// ---------------------------------------------------------------------------
// KappaRate
// ---------------------------------------------------------------------------

KappaRate::KappaRate(double domain_start, RateSpec spec, Admissibility adm)
    : domain_start_(domain_start), spec_(std::move(spec)), adm_(adm) {
    if (!std::isfinite(domain_start_))
        throw std::invalid_argument("kappa rate: non-finite domain start");
    auto check_nonneg = [](const std::vector<double>& vs) {
        for (double v : vs)
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument("kappa rate: values must be finite and >= 0");
    };
    if (const auto* c = std::get_if<ConstantSpec>(&spec_)) {
        check_nonneg({c->rate});
    } else if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec_)) {
        if (p->values.size() != p->thresholds.size() + 1 || p->thresholds.empty())
            throw std::invalid_argument("kappa rate: malformed piecewise spec");
        check_ascending(p->thresholds, "kappa rate");
        if (!(p->thresholds.front() > domain_start_))
            throw std::invalid_argument("kappa rate: thresholds must lie above the domain start");
        check_nonneg(p->values);
    } else {
        const auto& t = std::get<TabulatedSpec>(spec_);
        if (t.levels.size() != t.rates.size() || t.levels.size() < 2)
            throw std::invalid_argument("kappa rate: malformed tabulated spec");
        check_ascending(t.levels, "kappa rate");
        if (t.levels.front() != domain_start_)
            throw std::invalid_argument("kappa rate: first knot must sit at the domain start");
        check_nonneg(t.rates);
    }
}

KappaRate KappaRate::constant(double domain_start, double kappa, Admissibility adm) {
    return KappaRate(domain_start, ConstantSpec{kappa}, adm);
}

KappaRate KappaRate::piecewise_constant(double domain_start, std::vector<double> thresholds,
                                        std::vector<double> values, Admissibility adm) {
    return KappaRate(domain_start,
                     PiecewiseConstantSpec{std::move(thresholds), std::move(values)}, adm);
}

KappaRate KappaRate::tabulated(double domain_start, std::vector<double> levels,
                               std::vector<double> rates, Interpolation interp,
                               Admissibility adm) {
    return KappaRate(domain_start, TabulatedSpec{std::move(levels), std::move(rates), interp},
                     adm);
}

double KappaRate::operator()(double z) const {
    if (z < domain_start_)
        throw std::out_of_range("kappa rate: evaluation below the domain start");
    return eval_spec(spec_, z);
}

RateFunction kappa_to_delta(const KappaRate& kappa) {
    const auto map = [](double k) { return k / (1.0 + k); };
    const RateSpec& spec = kappa.spec();
    if (const auto* c = std::get_if<ConstantSpec>(&spec))
        return RateFunction::constant(kappa.domain_start(), map(c->rate),
                                      kappa.admissibility());
    if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec)) {
        std::vector<double> values(p->values.size());
        std::transform(p->values.begin(), p->values.end(), values.begin(), map);
        return RateFunction::piecewise_constant(kappa.domain_start(), p->thresholds,
                                                std::move(values), kappa.admissibility());
    }
    const auto& t = std::get<TabulatedSpec>(spec);
    std::vector<double> rates(t.rates.size());
    std::transform(t.rates.begin(), t.rates.end(), rates.begin(), map);
    return RateFunction::tabulated(kappa.domain_start(), t.levels, std::move(rates),
                                   t.interpolation, kappa.admissibility());
}

}  // namespace risktax
