// Dependency-free SVG chart emission: one polyline (line charts) or one
// circle group (scatter charts) per data series, optional y = x reference
// line. Output bytes are deterministic.

#pragma once

#include <string>
#include <vector>

#include "asym/geometry.hpp"

namespace asym {

struct ChartSeries {
    std::string name;
    std::string color;
    std::vector<Point> points;
};

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<ChartSeries>& series);

/// Scatter chart; when `draw_y_equals_x` is set both axes share one range
/// and the reference line is drawn in red.
std::string scatter_chart_svg(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<ChartSeries>& series,
                              bool draw_y_equals_x);

} // namespace asym
