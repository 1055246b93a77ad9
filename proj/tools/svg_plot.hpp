#pragma once

#include <string>
#include <vector>

namespace risktax_cli {

struct SvgSeries {
    std::vector<double> t;
    std::vector<double> v;
    std::string stroke;
    std::string dash;  // empty = solid
    double width = 1.5;
};

struct SvgMarker {
    double level;
    std::string label;
};

/// Minimal hand-rolled line plot: polylines for the series, dash-dot
/// horizontal marker lines, no external plotting dependency.
std::string render_line_plot(const std::vector<SvgSeries>& series,
                             const std::vector<SvgMarker>& markers, double t_max);

}  // namespace risktax_cli
