#ifndef GCLAB_SVG_HPP
#define GCLAB_SVG_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "gclab/format.hpp"

namespace gclab {

/// One plotted node: 2-d position, degree (radius), component (color).
struct ScatterPoint {
    double x = 0.0;
    double y = 0.0;
    double degree = 0.0;
    std::uint32_t component = 0;
};

/// Minimal self-contained scatter SVG: fixed viewport, points scaled into it,
/// component index cycling through a small palette, radius growing with
/// degree. Deterministic markup, no external resources.
inline void write_scatter_svg(std::ostream& os, const std::vector<ScatterPoint>& points,
                              const std::string& title) {
    static const char* palette[] = {"#4477aa", "#ee6677", "#228833", "#ccbb44",
                                    "#66ccee", "#aa3377", "#bbbbbb", "#222222"};
    const double size = 640.0, margin = 40.0;

    double lo_x = 0.0, hi_x = 1.0, lo_y = 0.0, hi_y = 1.0;
    if (!points.empty()) {
        lo_x = hi_x = points[0].x;
        lo_y = hi_y = points[0].y;
        for (const ScatterPoint& p : points) {
            lo_x = std::min(lo_x, p.x);
            hi_x = std::max(hi_x, p.x);
            lo_y = std::min(lo_y, p.y);
            hi_y = std::max(hi_y, p.y);
        }
    }
    const double span_x = hi_x - lo_x > 0.0 ? hi_x - lo_x : 1.0;
    const double span_y = hi_y - lo_y > 0.0 ? hi_y - lo_y : 1.0;

    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size
       << "\" viewBox=\"0 0 " << size << ' ' << size << "\">\n";
    os << "<title>" << title << "</title>\n";
    os << "<rect width=\"" << size << "\" height=\"" << size << "\" fill=\"white\"/>\n";
    for (const ScatterPoint& p : points) {
        const double px = margin + (p.x - lo_x) / span_x * (size - 2.0 * margin);
        const double py = size - margin - (p.y - lo_y) / span_y * (size - 2.0 * margin);
        const double radius = 2.0 + std::sqrt(std::max(0.0, p.degree));
        os << "<circle cx=\"" << format_double(px) << "\" cy=\"" << format_double(py)
           << "\" r=\"" << format_double(radius) << "\" fill=\"" << palette[p.component % 8]
           << "\" fill-opacity=\"0.75\"/>\n";
    }
    os << "</svg>\n";
}

} // namespace gclab

#endif
