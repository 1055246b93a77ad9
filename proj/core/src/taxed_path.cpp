#include "risktax/taxed_path.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "format.hpp"

namespace risktax {

// ---------------------------------------------------------------------------
// TaxTransform
// ---------------------------------------------------------------------------

TaxTransform::TaxTransform(TaxRegime regime, RateFunction rate, double x,
                           std::variant<GammaBarMap, RateOdeSolution> map)
    : regime_(regime), rate_(std::move(rate)), x_(x), map_(std::move(map)) {}

std::shared_ptr<const TaxTransform> TaxTransform::latent(RateFunction gamma, double x) {
    GammaBarMap map = gamma_bar(gamma, x);
    return std::shared_ptr<const TaxTransform>(
        new TaxTransform(TaxRegime::latent, std::move(gamma), x, std::move(map)));
}

std::shared_ptr<const TaxTransform> TaxTransform::natural(RateFunction delta, double x) {
    RateOdeSolution ode = solve_rate_ode(delta, x);
    return std::shared_ptr<const TaxTransform>(
        new TaxTransform(TaxRegime::natural, std::move(delta), x, std::move(ode)));
}

std::shared_ptr<const TaxTransform> TaxTransform::natural(RateFunction delta,
                                                          RateOdeSolution ode) {
    const double x = ode.base_point();
    if (delta.domain_start() != x)
        throw std::invalid_argument("tax transform: rate domain does not match the ODE");
    return std::shared_ptr<const TaxTransform>(
        new TaxTransform(TaxRegime::natural, std::move(delta), x, std::move(ode)));
}

double TaxTransform::operator()(double s) const {
    if (const auto* g = std::get_if<GammaBarMap>(&map_)) return (*g)(s);
    const auto& ode = std::get<RateOdeSolution>(map_);
    return ode(s - x_);
}

double TaxTransform::inverse(double level) const {
    if (const auto* g = std::get_if<GammaBarMap>(&map_)) return g->inverse(level);
    const auto& ode = std::get<RateOdeSolution>(map_);
    const double t = ode.inverse(level);
    return is_never(t) ? t : x_ + t;
}

double TaxTransform::limit() const {
    if (const auto* g = std::get_if<GammaBarMap>(&map_)) return g->limit_at_infinity();
    return std::get<RateOdeSolution>(map_).horizon();
}

bool TaxTransform::capped() const {
    if (std::holds_alternative<GammaBarMap>(map_)) return false;
    return std::get<RateOdeSolution>(map_).horizon_capped();
}

// ---------------------------------------------------------------------------
// TaxedPath
// ---------------------------------------------------------------------------

TaxedPath::TaxedPath(PiecewiseLinearPath path, std::shared_ptr<const TaxTransform> transform)
    : path_(std::move(path)), transform_(std::move(transform)),
      regime_(transform_->regime()) {
    if (transform_->base_point() != path_.start_value())
        throw std::invalid_argument(
            "taxed path: rate domain does not start at the path start value");
}

TaxedPath TaxedPath::sampled(PiecewiseLinearPath path, TaxRegime regime, RateFunction rate,
                             std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("taxed path: malformed sample arrays");
    TaxedPath tp(std::move(path), regime, std::move(rate), std::move(times),
                 std::move(values));
    return tp;
}

// private delegating constructor for the sampled variant
TaxedPath::TaxedPath(PiecewiseLinearPath path, TaxRegime regime, RateFunction rate,
                     std::vector<double> times, std::vector<double> values)
    : path_(std::move(path)), regime_(regime), sampled_rate_(std::move(rate)),
      sample_times_(std::move(times)), sample_values_(std::move(values)) {
    sample_cummax_.resize(sample_values_.size());
    double m = sample_values_.front();
    for (std::size_t i = 0; i < sample_values_.size(); ++i) {
        m = std::max(m, sample_values_[i]);
        sample_cummax_[i] = m;
    }
}

const RateFunction& TaxedPath::rate() const {
    if (transform_) return transform_->rate();
    return *sampled_rate_;
}

const TaxTransform& TaxedPath::transform() const {
    if (!transform_) throw std::logic_error("taxed path: sampled paths carry no transform");
    return *transform_;
}

namespace {

std::size_t sample_index(const std::vector<double>& times, double t) {
    auto it = std::upper_bound(times.begin(), times.end(), t);
    if (it == times.begin()) throw std::out_of_range("taxed path: time before first sample");
    return static_cast<std::size_t>(it - times.begin()) - 1;
}

}  // namespace

double TaxedPath::value(double t) const {
    if (transform_) {
        const double xbar = path_.running_max(t);
        return path_.value(t) - xbar + (*transform_)(xbar);
    }
    const std::size_t k = sample_index(sample_times_, t);
    if (t == sample_times_[k] || k + 1 == sample_times_.size()) return sample_values_[k];
    const double w = (t - sample_times_[k]) / (sample_times_[k + 1] - sample_times_[k]);
    return sample_values_[k] + w * (sample_values_[k + 1] - sample_values_[k]);
}

double TaxedPath::running_max(double t) const {
    if (transform_) return (*transform_)(path_.running_max(t));
    const std::size_t k = sample_index(sample_times_, t);
    double m = sample_cummax_[k];
    if (t > sample_times_[k] && k + 1 < sample_times_.size())
        m = std::max(m, value(t));
    return m;
}

double TaxedPath::total_tax(double t) const {
    if (transform_) {
        const double xbar = path_.running_max(t);
        return xbar - (*transform_)(xbar);
    }
    return path_.value(t) - value(t);
}

double TaxedPath::first_passage(double level, Direction direction) const {
    if (!transform_) {
        // Sampled polyline: continuous, scan intervals.
        const auto& ts = sample_times_;
        const auto& vs = sample_values_;
        if (direction == Direction::up ? vs[0] > level : vs[0] < level) return 0.0;
        for (std::size_t j = 0; j + 1 < ts.size(); ++j) {
            const bool crossed = direction == Direction::up ? vs[j + 1] > level
                                                            : vs[j + 1] < level;
            if (!crossed) continue;
            const double slope = (vs[j + 1] - vs[j]) / (ts[j + 1] - ts[j]);
            return ts[j] + (level - vs[j]) / slope;
        }
        return infinite_time;
    }

    const TaxTransform& m = *transform_;
    if (direction == Direction::up) {
        if (level < path_.start_value()) return 0.0;  // taxed(0) = x > level
        if (m.capped() && level >= m.limit()) return infinite_time;
        const double pre_tax_level = m.inverse(level);
        if (is_never(pre_tax_level)) return infinite_time;
        return path_.first_passage(pre_tax_level, Direction::up);
    }

    // Downward passage: within a segment the taxed value is affine while the
    // pre-tax maximum is frozen and increasing while a new maximum is being
    // set, so crossings happen only at segment starts (jumps included) or
    // inside falling segments.
    const auto& pts = path_.breakpoints();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double max_k = path_.running_max_at_breakpoint(k);
        const double taxed_k = pts[k].right - max_k + m(max_k);
        if (taxed_k < level) return pts[k].time;
        if (k + 1 == pts.size()) break;
        const double dt = pts[k + 1].time - pts[k].time;
        const double slope = (pts[k + 1].left - pts[k].right) / dt;
        if (slope < 0.0) {
            const double taxed_end = taxed_k + slope * dt;
            if (taxed_end < level) return pts[k].time + (level - taxed_k) / slope;
        }
    }
    return infinite_time;
}

std::string TaxedPath::to_csv(const std::vector<double>& extra_times) const {
    std::vector<double> times;
    times.reserve(path_.breakpoints().size() + extra_times.size());
    for (const auto& p : path_.breakpoints()) times.push_back(p.time);
    for (double t : extra_times)
        if (t >= 0.0 && t <= path_.horizon()) times.push_back(t);
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    std::string out = "t,X,Xbar,taxed,taxed_bar,cumulative_tax\n";
    for (double t : times) {
        out += detail::fmt17(t);
        out += ',';
        out += detail::fmt17(path_.value(t));
        out += ',';
        out += detail::fmt17(path_.running_max(t));
        out += ',';
        out += detail::fmt17(value(t));
        out += ',';
        out += detail::fmt17(running_max(t));
        out += ',';
        out += detail::fmt17(total_tax(t));
        out += '\n';
    }
    return out;
}

TaxedPath apply_latent_tax(PiecewiseLinearPath path, const RateFunction& gamma) {
    auto transform = TaxTransform::latent(gamma, path.start_value());
    return TaxedPath(std::move(path), std::move(transform));
}

TaxedPath apply_natural_tax(PiecewiseLinearPath path, const RateFunction& delta) {
    auto transform = TaxTransform::natural(delta, path.start_value());
    return TaxedPath(std::move(path), std::move(transform));
}

TaxedPath apply_natural_tax(PiecewiseLinearPath path,
                            std::shared_ptr<const TaxTransform> transform) {
    return TaxedPath(std::move(path), std::move(transform));
}

double first_passage_taxed(const TaxedPath& taxed, double level, Direction direction) {
    return taxed.first_passage(level, direction);
}

// ---------------------------------------------------------------------------
// Scanned maximum and the max-time set check
// ---------------------------------------------------------------------------

ScannedTaxedMax::ScannedTaxedMax(const TaxedPath& taxed) : taxed_(taxed) {
    if (!taxed.is_closed_form()) return;  // sampled paths already scan their samples
    const auto& pts = taxed.pre_tax().breakpoints();
    cummax_.resize(pts.size());
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < pts.size(); ++k) {
        const double xbar = taxed.pre_tax().running_max_at_breakpoint(k);
        const double shift = (*taxed.transform_)(xbar) - xbar;
        m = std::max(m, pts[k].left + shift);
        m = std::max(m, pts[k].right + shift);
        cummax_[k] = m;
    }
}

double ScannedTaxedMax::operator()(double t) const {
    if (!taxed_.is_closed_form()) return taxed_.running_max(t);
    const auto& path = taxed_.pre_tax();
    const std::size_t k = path.segment_index(t);
    double m = cummax_[k];
    const auto& pts = path.breakpoints();
    if (t > pts[k].time && k + 1 < pts.size()) {
        const double slope = (pts[k + 1].left - pts[k].right) / (pts[k + 1].time - pts[k].time);
        if (slope > 0.0) m = std::max(m, taxed_.value(t));
    }
    return m;
}

MaxTimeEqualityReport check_max_time_equality(const TaxedPath& taxed,
                                              const std::vector<double>& sample_times,
                                              double tolerance) {
    MaxTimeEqualityReport report;
    report.tolerance = tolerance;
    const ScannedTaxedMax scanned(taxed);
    const auto& path = taxed.pre_tax();

    for (double t : sample_times) {
        const double taxed_gap = scanned(t) - taxed.value(t);
        const double pre_tax_gap = path.running_max(t) - path.value(t);
        const double closed_form =
            path.running_max(t) - taxed.total_tax(t);  // Xbar - integral of the rate process
        const double closed_form_gap = std::fabs(scanned(t) - closed_form);
        ++report.checked;
        if (std::fabs(taxed_gap - pre_tax_gap) > tolerance || closed_form_gap > tolerance)
            report.violations.push_back({t, taxed_gap, pre_tax_gap, closed_form_gap});
    }
    return report;
}

}  // namespace risktax
