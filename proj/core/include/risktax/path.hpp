#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace risktax {

enum class Direction { up, down };

/// Marker for "no passage / unbounded": IEEE +infinity, never a finite sentinel.
inline constexpr double infinite_time = std::numeric_limits<double>::infinity();

inline bool is_never(double t) { return std::isinf(t); }

/// One breakpoint of a piecewise-linear path. `left` is the limit from the
/// left at `time`, `right` the value at `time` (cadlag). A downward jump has
/// right < left; upward jumps are rejected.
struct Breakpoint {
    double time;
    double left;
    double right;
};

/// Exact event-driven sample path: affine between breakpoints, downward jumps
/// at breakpoints. The first breakpoint sits at time 0 with left == right ==
/// the start value, the last at the horizon. Immutable after construction.
class PiecewiseLinearPath {
public:
    PiecewiseLinearPath(std::vector<Breakpoint> breakpoints, double horizon);

    double start_value() const { return pts_.front().right; }
    double horizon() const { return horizon_; }
    const std::vector<Breakpoint>& breakpoints() const { return pts_; }

    /// Cadlag evaluation at t in [0, horizon].
    double value(double t) const;

    /// Exact running maximum sup_{s <= t} X_s, computed segmentwise in
    /// closed form. Continuous and non-decreasing in t.
    double running_max(double t) const;

    /// First time the path strictly exceeds (up) or strictly undershoots
    /// (down) `level`. 0 if the start value already qualifies; the infinity
    /// marker if no passage happens by the horizon.
    double first_passage(double level, Direction direction) const;

    /// CSV with header `t,left,right`, one row per breakpoint,
    /// 17-significant-digit decimals, LF line endings.
    std::string to_csv() const;

    /// Running maximum at breakpoint `i` (time pts_[i].time); exposed for
    /// segment-walking consumers such as the taxation engine.
    double running_max_at_breakpoint(std::size_t i) const { return cummax_[i]; }

    /// Index of the segment containing t: largest i with pts_[i].time <= t.
    std::size_t segment_index(double t) const;

private:
    std::vector<Breakpoint> pts_;
    std::vector<double> cummax_;
    double horizon_;
};

}  // namespace risktax
