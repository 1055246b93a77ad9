#include "risktax/conversions.hpp"

#include <stdexcept>

namespace risktax {

namespace {

// The composed rate keeps its certificate: both change-of-variable maps are
// strictly increasing, so monotonicity survives. A Lipschitz bound L on a
// linear-interpolated table dilates by at most 1/(1 - sup rate) in the
// latent -> natural direction and contracts in the other.
Admissibility carried(const Admissibility& adm, double dilation) {
    if (adm.kind() == Admissibility::Kind::lipschitz)
        return Admissibility::lipschitz(adm.lipschitz_bound() * dilation);
    return adm;
}

}  // namespace

RateFunction latent_to_natural(const RateFunction& latent_rate, double x) {
    const GammaBarMap map = gamma_bar(latent_rate, x);

    const RateSpec& spec = latent_rate.spec();
    if (const auto* c = std::get_if<ConstantSpec>(&spec))
        return RateFunction::constant(x, c->rate, latent_rate.admissibility());

    if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec)) {
        std::vector<double> thresholds;
        thresholds.reserve(p->thresholds.size());
        for (double th : p->thresholds) thresholds.push_back(map(th));
        return RateFunction::piecewise_constant(x, std::move(thresholds), p->values,
                                                latent_rate.admissibility());
    }

    const auto& t = std::get<TabulatedSpec>(spec);
    std::vector<double> levels;
    levels.reserve(t.levels.size());
    for (double level : t.levels) levels.push_back(map(level));
    const double dilation = 1.0 / (1.0 - latent_rate.sup_rate());
    return RateFunction::tabulated(x, std::move(levels), t.rates, t.interpolation,
                                   carried(latent_rate.admissibility(), dilation));
}

RateFunction natural_to_latent(const RateFunction& natural_rate, double x) {
    return natural_to_latent(natural_rate, solve_rate_ode(natural_rate, x));
}

RateFunction natural_to_latent(const RateFunction& natural_rate,
                               const RateOdeSolution& ode) {
    const double x = ode.base_point();
    if (natural_rate.domain_start() != x)
        throw std::invalid_argument("natural_to_latent: rate domain does not match the ODE");
    if (ode.horizon_capped())
        throw std::invalid_argument(
            "natural_to_latent: rate hits the slope threshold; the latent image does not "
            "cover [x, infinity)");

    const RateSpec& spec = natural_rate.spec();
    if (const auto* c = std::get_if<ConstantSpec>(&spec))
        return RateFunction::constant(x, c->rate, natural_rate.admissibility());

    if (const auto* p = std::get_if<PiecewiseConstantSpec>(&spec)) {
        std::vector<double> thresholds;
        thresholds.reserve(ode.piece_crossing_times().size());
        for (double tc : ode.piece_crossing_times()) thresholds.push_back(x + tc);
        return RateFunction::piecewise_constant(x, std::move(thresholds), p->values,
                                                natural_rate.admissibility());
    }

    const auto& t = std::get<TabulatedSpec>(spec);
    std::vector<double> levels;
    levels.reserve(t.levels.size());
    levels.push_back(x);
    for (double tc : ode.piece_crossing_times()) levels.push_back(x + tc);
    if (levels.size() != t.levels.size())
        throw std::logic_error("natural_to_latent: knot/crossing mismatch");
    return RateFunction::tabulated(x, std::move(levels), t.rates, t.interpolation,
                                   natural_rate.admissibility());
}

}  // namespace risktax
