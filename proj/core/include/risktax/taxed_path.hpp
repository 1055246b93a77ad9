#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "risktax/gamma_bar.hpp"
#include "risktax/path.hpp"
#include "risktax/rate_function.hpp"
#include "risktax/rate_ode.hpp"

namespace risktax {

enum class TaxRegime { latent, natural };

/// The level map from the pre-tax running maximum to the taxed running
/// maximum: the accumulated net-of-tax map for a latent rate, or the
/// rate-conversion ODE solution (shifted by the start level) for a natural
/// rate. Immutable and shareable across paths and threads; Monte Carlo builds
/// it once per estimate.
class TaxTransform {
public:
    static std::shared_ptr<const TaxTransform> latent(RateFunction gamma, double x);
    static std::shared_ptr<const TaxTransform> natural(RateFunction delta, double x);
    static std::shared_ptr<const TaxTransform> natural(RateFunction delta,
                                                       RateOdeSolution ode);

    TaxRegime regime() const { return regime_; }
    const RateFunction& rate() const { return rate_; }
    double base_point() const { return x_; }

    double operator()(double s) const;
    double inverse(double level) const;

    /// Taxed-maximum ceiling: the map value at infinity. Finite only when the
    /// natural rate trips the ODE slope threshold.
    double limit() const;
    bool capped() const;

    const GammaBarMap* gamma_map() const { return std::get_if<GammaBarMap>(&map_); }
    const RateOdeSolution* ode() const { return std::get_if<RateOdeSolution>(&map_); }

private:
    TaxTransform(TaxRegime regime, RateFunction rate, double x,
                 std::variant<GammaBarMap, RateOdeSolution> map);

    TaxRegime regime_;
    RateFunction rate_;
    double x_;
    std::variant<GammaBarMap, RateOdeSolution> map_;
};

/// A taxed path over a pre-tax path. Closed-form instances evaluate through
/// the change-of-variables identity taxed(t) = X_t - Xbar_t + m(Xbar_t);
/// sampled instances (built by the discretized oracles) interpolate recorded
/// values. Immutable; safe for concurrent reads.
class TaxedPath {
public:
    TaxedPath(PiecewiseLinearPath path, std::shared_ptr<const TaxTransform> transform);

    static TaxedPath sampled(PiecewiseLinearPath path, TaxRegime regime, RateFunction rate,
                             std::vector<double> times, std::vector<double> values);

    const PiecewiseLinearPath& pre_tax() const { return path_; }
    TaxRegime regime() const { return regime_; }
    const RateFunction& rate() const;
    bool is_closed_form() const { return transform_ != nullptr; }

    /// The level map; closed-form paths only.
    const TaxTransform& transform() const;

    double value(double t) const;

    /// Taxed running maximum. Closed form: m(Xbar_t); sampled: prefix maximum
    /// of the recorded values.
    double running_max(double t) const;

    /// Cumulative tax paid by time t; non-decreasing, equals X_t - taxed(t).
    double total_tax(double t) const;

    /// First passage of the taxed process. Upward passages ride the identity
    /// tau+_a(taxed) = tau+_{m^{-1}(a)}(X) and are exact whenever the level
    /// map is piecewise linear; downward passages are found by segment scan.
    /// Returns the infinity marker when the level is out of reach (including
    /// levels at or above a finite taxed-maximum ceiling).
    double first_passage(double level, Direction direction) const;

    /// CSV `t,X,Xbar,taxed,taxed_bar,cumulative_tax` over the union of the
    /// path breakpoints and `extra_times` (both clipped to [0, horizon]).
    std::string to_csv(const std::vector<double>& extra_times = {}) const;

private:
    friend class ScannedTaxedMax;

    TaxedPath(PiecewiseLinearPath path, TaxRegime regime, RateFunction rate,
              std::vector<double> times, std::vector<double> values);

    PiecewiseLinearPath path_;
    std::shared_ptr<const TaxTransform> transform_;  // null for sampled paths
    TaxRegime regime_;
    std::optional<RateFunction> sampled_rate_;
    std::vector<double> sample_times_;
    std::vector<double> sample_values_;
    std::vector<double> sample_cummax_;
};

TaxedPath apply_latent_tax(PiecewiseLinearPath path, const RateFunction& gamma);
TaxedPath apply_natural_tax(PiecewiseLinearPath path, const RateFunction& delta);
TaxedPath apply_natural_tax(PiecewiseLinearPath path,
                            std::shared_ptr<const TaxTransform> transform);

double first_passage_taxed(const TaxedPath& taxed, double level, Direction direction);

/// Running maximum of the taxed process rebuilt by scanning taxed values
/// segment by segment, independent of the closed-form maximum identity it is
/// used to verify. O(breakpoints) to build, O(log) per query.
class ScannedTaxedMax {
public:
    explicit ScannedTaxedMax(const TaxedPath& taxed);
    double operator()(double t) const;

private:
    const TaxedPath& taxed_;
    std::vector<double> cummax_;
};

struct MaxTimeEqualityReport {
    struct Violation {
        double time;
        double taxed_gap;       // scanned taxed max minus taxed value
        double pre_tax_gap;     // pre-tax max minus pre-tax value
        double closed_form_gap; // |scanned taxed max - (Xbar - total tax)|
    };

    std::size_t checked = 0;
    double tolerance = 0.0;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/// Verifies, at each sample time, that the taxed process sits at its running
/// maximum exactly when the pre-tax process does (the distances to the two
/// maxima agree within the tolerance, which implies equality of the max-time
/// sets), and that the scanned taxed maximum matches the closed form
/// Xbar_t - cumulative tax.
MaxTimeEqualityReport check_max_time_equality(const TaxedPath& taxed,
                                              const std::vector<double>& sample_times,
                                              double tolerance = 1e-9);

}  // namespace risktax
