#include "risktax/path.hpp"

#include <algorithm>
#include <stdexcept>

#include "format.hpp"

namespace risktax {

PiecewiseLinearPath::PiecewiseLinearPath(std::vector<Breakpoint> breakpoints,
                                         double horizon)
    : pts_(std::move(breakpoints)), horizon_(horizon) {
    if (pts_.empty()) throw std::invalid_argument("path: no breakpoints");
    if (!(horizon_ > 0) || !std::isfinite(horizon_))
        throw std::invalid_argument("path: horizon must be positive and finite");
    if (pts_.front().time != 0.0)
        throw std::invalid_argument("path: first breakpoint must be at time 0");
    if (pts_.front().left != pts_.front().right)
        throw std::invalid_argument("path: first breakpoint must have left == right");
    if (pts_.back().time != horizon_)
        throw std::invalid_argument("path: last breakpoint must lie at the horizon");
    for (std::size_t i = 0; i < pts_.size(); ++i) {
        const auto& p = pts_[i];
        if (!std::isfinite(p.time) || !std::isfinite(p.left) || !std::isfinite(p.right))
            throw std::invalid_argument("path: non-finite breakpoint");
        if (p.right > p.left)
            throw std::invalid_argument("path: upward jump at breakpoint");
        if (i > 0 && !(pts_[i - 1].time < p.time))
            throw std::invalid_argument("path: breakpoint times must be strictly increasing");
    }

    // Running maximum at breakpoint times. The left limit at a breakpoint is
    // attained as a supremum, so it enters the prefix maximum.
    cummax_.resize(pts_.size());
    cummax_[0] = pts_[0].right;
    for (std::size_t i = 1; i < pts_.size(); ++i)
        cummax_[i] = std::max(cummax_[i - 1], pts_[i].left);
}

std::size_t PiecewiseLinearPath::segment_index(double t) const {
    if (t < 0.0 || t > horizon_)
        throw std::out_of_range("path: time outside [0, horizon]");
    auto it = std::upper_bound(pts_.begin(), pts_.end(), t,
                               [](double v, const Breakpoint& b) { return v < b.time; });
    return static_cast<std::size_t>(it - pts_.begin()) - 1;
}

double PiecewiseLinearPath::value(double t) const {
    const std::size_t k = segment_index(t);
    const Breakpoint& a = pts_[k];
    if (t == a.time || k + 1 == pts_.size()) return a.right;
    const Breakpoint& b = pts_[k + 1];
    const double slope = (b.left - a.right) / (b.time - a.time);
    return a.right + slope * (t - a.time);
}

double PiecewiseLinearPath::running_max(double t) const {
    const std::size_t k = segment_index(t);
    double m = cummax_[k];
    if (t > pts_[k].time && k + 1 < pts_.size()) {
        const Breakpoint& a = pts_[k];
        const Breakpoint& b = pts_[k + 1];
        if (b.left > a.right) {  // rising segment: partial max at t
            const double slope = (b.left - a.right) / (b.time - a.time);
            m = std::max(m, a.right + slope * (t - a.time));
        }
    }
    return m;
}

double PiecewiseLinearPath::first_passage(double level, Direction direction) const {
    if (direction == Direction::up) {
        if (pts_.front().right > level) return 0.0;
        // cummax_ is non-decreasing: locate the first breakpoint whose prefix
        // maximum exceeds the level, then solve within the preceding segment.
        auto it = std::upper_bound(cummax_.begin(), cummax_.end(), level);
        if (it == cummax_.end()) return infinite_time;
        const std::size_t i = static_cast<std::size_t>(it - cummax_.begin());
        // i >= 1: cummax_[0] = start value <= level was handled above.
        const Breakpoint& a = pts_[i - 1];
        const Breakpoint& b = pts_[i];
        const double slope = (b.left - a.right) / (b.time - a.time);
        return a.time + (level - a.right) / slope;
    }

    // down: scan segments; jumps are caught by the start-value check of the
    // following breakpoint.
    for (std::size_t k = 0; k < pts_.size(); ++k) {
        const Breakpoint& a = pts_[k];
        if (a.right < level) return a.time;
        if (k + 1 == pts_.size()) break;
        const Breakpoint& b = pts_[k + 1];
        if (b.left < level && b.left < a.right) {
            const double slope = (b.left - a.right) / (b.time - a.time);
            return a.time + (level - a.right) / slope;
        }
    }
    return infinite_time;
}

std::string PiecewiseLinearPath::to_csv() const {
    std::string out = "t,left,right\n";
    for (const auto& p : pts_) {
        out += detail::fmt17(p.time);
        out += ',';
        out += detail::fmt17(p.left);
        out += ',';
        out += detail::fmt17(p.right);
        out += '\n';
    }
    return out;
}

}  // namespace risktax
