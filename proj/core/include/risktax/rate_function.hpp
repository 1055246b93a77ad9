#pragma once

#include <string>
#include <variant>
#include <vector>

namespace risktax {

enum class Interpolation { step, linear };

/// Uniqueness certificate for the rate-conversion ODE. `none` is valid for
/// latent-side use but is refused by the ODE solver; `monotone` covers
/// progressive regimes, `lipschitz` invokes Picard-Lindeloef.
class Admissibility {
public:
    enum class Kind { none, monotone, lipschitz };

    static Admissibility none() { return Admissibility(Kind::none, 0.0); }
    static Admissibility monotone() { return Admissibility(Kind::monotone, 0.0); }
    static Admissibility lipschitz(double bound);

    Kind kind() const { return kind_; }
    double lipschitz_bound() const { return bound_; }

    bool certifies_uniqueness() const { return kind_ != Kind::none; }

private:
    Admissibility(Kind k, double b) : kind_(k), bound_(b) {}
    Kind kind_;
    double bound_;
};

struct ConstantSpec {
    double rate;
};

/// Pieces are left-open right-closed: value_0 on [domain_start, th_0],
/// value_i on (th_{i-1}, th_i], the last value above the last threshold.
/// The classic two-level rate (low up to a threshold, high above) is the
/// one-threshold case.
struct PiecewiseConstantSpec {
    std::vector<double> thresholds;  // strictly ascending, all > domain_start
    std::vector<double> values;      // size = thresholds.size() + 1
};

/// Knot table starting at the domain start. `step` holds each rate until the
/// next knot; `linear` interpolates between knots. Constant extrapolation
/// beyond the last knot.
struct TabulatedSpec {
    std::vector<double> levels;
    std::vector<double> rates;
    Interpolation interpolation;
};

using RateSpec = std::variant<ConstantSpec, PiecewiseConstantSpec, TabulatedSpec>;

/// A tax-rate function on [domain_start, infinity) with values in [0, 1),
/// together with its admissibility certificate. Immutable.
class RateFunction {
public:
    static RateFunction constant(double domain_start, double rate,
                                 Admissibility adm = Admissibility::monotone());
    static RateFunction piecewise_constant(double domain_start,
                                           std::vector<double> thresholds,
                                           std::vector<double> values,
                                           Admissibility adm = Admissibility::none());
    static RateFunction tabulated(double domain_start, std::vector<double> levels,
                                  std::vector<double> rates, Interpolation interp,
                                  Admissibility adm = Admissibility::none());

    /// Two-level rate: `low` up to and including `threshold`, `high` above.
    /// Monotone certificate when low <= high.
    static RateFunction two_piece(double domain_start, double threshold,
                                  double low, double high);

    double domain_start() const { return domain_start_; }
    const Admissibility& admissibility() const { return adm_; }
    const RateSpec& spec() const { return spec_; }

    bool is_constant() const { return std::holds_alternative<ConstantSpec>(spec_); }
    bool is_piecewise_constant() const {
        return std::holds_alternative<PiecewiseConstantSpec>(spec_);
    }
    bool is_tabulated() const { return std::holds_alternative<TabulatedSpec>(spec_); }

    /// Evaluate at z >= domain_start; below the domain is an error.
    double operator()(double z) const;

    double sup_rate() const { return sup_; }
    double inf_rate() const { return inf_; }

    std::string to_json() const;
    static RateFunction from_json(const std::string& text);

private:
    RateFunction(double domain_start, RateSpec spec, Admissibility adm);
    void validate() const;

    double domain_start_;
    RateSpec spec_;
    Admissibility adm_;
    double sup_ = 0.0;
    double inf_ = 0.0;
};

/// A kappa-parametrized rate (values in [0, infinity)): the tax is taken as a
/// proportion of pre-tax increments of the taxed maximum rather than of the
/// integrator. Same shapes as RateFunction, different codomain.
class KappaRate {
public:
    static KappaRate constant(double domain_start, double kappa,
                              Admissibility adm = Admissibility::monotone());
    static KappaRate piecewise_constant(double domain_start,
                                        std::vector<double> thresholds,
                                        std::vector<double> values,
                                        Admissibility adm = Admissibility::none());
    static KappaRate tabulated(double domain_start, std::vector<double> levels,
                               std::vector<double> rates, Interpolation interp,
                               Admissibility adm = Admissibility::none());

    double domain_start() const { return domain_start_; }
    const RateSpec& spec() const { return spec_; }
    const Admissibility& admissibility() const { return adm_; }

    double operator()(double z) const;

private:
    KappaRate(double domain_start, RateSpec spec, Admissibility adm);

    double domain_start_;
    RateSpec spec_;
    Admissibility adm_;
};

/// Pointwise delta = kappa / (1 + kappa), preserving the spec shape and the
/// admissibility certificate (the map is monotone and 1-Lipschitz in kappa).
RateFunction kappa_to_delta(const KappaRate& kappa);

}  // namespace risktax
