#include "svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace risktax_cli {

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

}  // namespace

std::string render_line_plot(const std::vector<SvgSeries>& series,
                             const std::vector<SvgMarker>& markers, double t_max) {
    const double width = 900, height = 480;
    const double ml = 55, mr = 20, mt = 20, mb = 40;

    double v_lo = 0.0, v_hi = 1.0;
    bool first = true;
    for (const auto& s : series)
        for (double v : s.v) {
            if (first) {
                v_lo = v_hi = v;
                first = false;
            }
            v_lo = std::min(v_lo, v);
            v_hi = std::max(v_hi, v);
        }
    for (const auto& m : markers) {
        v_lo = std::min(v_lo, m.level);
        v_hi = std::max(v_hi, m.level);
    }
    const double pad = 0.05 * (v_hi - v_lo + 1.0);
    v_lo -= pad;
    v_hi += pad;

    const auto sx = [&](double t) { return ml + (width - ml - mr) * t / t_max; };
    const auto sy = [&](double v) {
        return mt + (height - mt - mb) * (v_hi - v) / (v_hi - v_lo);
    };

    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) +
                      "\" height=\"" + num(height) + "\" viewBox=\"0 0 " + num(width) + " " +
                      num(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    // axes
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(height - mb) + "\" x2=\"" +
           num(width - mr) + "\" y2=\"" + num(height - mb) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(mt) + "\" x2=\"" + num(ml) +
           "\" y2=\"" + num(height - mb) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";

    for (const auto& m : markers) {
        svg += "<line x1=\"" + num(ml) + "\" y1=\"" + num(sy(m.level)) + "\" x2=\"" +
               num(width - mr) + "\" y2=\"" + num(sy(m.level)) +
               "\" stroke=\"#555555\" stroke-width=\"1\" stroke-dasharray=\"8 3 2 3\"/>\n";
        svg += "<text x=\"" + num(width - mr - 4) + "\" y=\"" + num(sy(m.level) - 4) +
               "\" font-size=\"13\" text-anchor=\"end\" fill=\"#333333\">" + m.label +
               "</text>\n";
    }

    for (const auto& s : series) {
        svg += "<polyline fill=\"none\" stroke=\"" + s.stroke + "\" stroke-width=\"" +
               num(s.width) + "\"";
        if (!s.dash.empty()) svg += " stroke-dasharray=\"" + s.dash + "\"";
        svg += " points=\"";
        for (std::size_t i = 0; i < s.t.size(); ++i) {
            svg += num(sx(s.t[i])) + "," + num(sy(s.v[i]));
            if (i + 1 < s.t.size()) svg += ' ';
        }
        svg += "\"/>\n";
    }

    // time axis labels
    for (int i = 0; i <= 5; ++i) {
        const double t = t_max * i / 5.0;
        svg += "<text x=\"" + num(sx(t)) + "\" y=\"" + num(height - mb + 16) +
               "\" font-size=\"12\" text-anchor=\"middle\">" + num(t) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace risktax_cli
