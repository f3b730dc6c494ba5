#include "asym/chart.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace asym {

namespace {

constexpr double kWidth = 900, kHeight = 540;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

std::string escape_xml(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string fmt_tick(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Range {
    double lo = 0.0, hi = 1.0;
    void include(double v) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    void pad() {
        if (hi - lo < 1e-12) {
            lo -= 1.0;
            hi += 1.0;
        } else {
            const double m = 0.04 * (hi - lo);
            lo -= m;
            hi += m;
        }
    }
};

struct Mapper {
    Range x, y;
    double sx(double v) const { return kLeft + (v - x.lo) / (x.hi - x.lo) * (kWidth - kLeft - kRight); }
    double sy(double v) const {
        return kHeight - kBottom - (v - y.lo) / (y.hi - y.lo) * (kHeight - kTop - kBottom);
    }
};

Mapper fit_ranges(const std::vector<ChartSeries>& series, bool share) {
    Range rx, ry;
    bool first = true;
    for (const ChartSeries& s : series) {
        for (const Point& p : s.points) {
            if (first) {
                rx = {p.x, p.x};
                ry = {p.y, p.y};
                first = false;
            } else {
                rx.include(p.x);
                ry.include(p.y);
            }
        }
    }
    if (share) {
        const double lo = std::min(rx.lo, ry.lo);
        const double hi = std::max(rx.hi, ry.hi);
        rx = ry = {lo, hi};
    }
    rx.pad();
    ry.pad();
    return {rx, ry};
}

void append_frame(std::string& svg, const Mapper& m, const std::string& title,
                  const std::string& x_label, const std::string& y_label) {
    svg += "<rect x=\"" + fmt(kLeft) + "\" y=\"" + fmt(kTop) + "\" width=\"" +
           fmt(kWidth - kLeft - kRight) + "\" height=\"" + fmt(kHeight - kTop - kBottom) +
           "\" fill=\"none\" stroke=\"#888\"/>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"24\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"16\">" +
           escape_xml(title) + "</text>\n";
    svg += "<text x=\"" + fmt(kWidth / 2) + "\" y=\"" + fmt(kHeight - 10) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" +
           escape_xml(x_label) + "</text>\n";
    svg += "<text x=\"16\" y=\"" + fmt(kHeight / 2) +
           "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" "
           "transform=\"rotate(-90 16 " +
           fmt(kHeight / 2) + ")\">" + escape_xml(y_label) + "</text>\n";

    for (int k = 0; k <= 4; ++k) {
        const double fx = m.x.lo + (m.x.hi - m.x.lo) * k / 4.0;
        const double fy = m.y.lo + (m.y.hi - m.y.lo) * k / 4.0;
        svg += "<text x=\"" + fmt(m.sx(fx)) + "\" y=\"" + fmt(kHeight - kBottom + 16) +
               "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" +
               fmt_tick(fx) + "</text>\n";
        svg += "<text x=\"" + fmt(kLeft - 6) + "\" y=\"" + fmt(m.sy(fy) + 3) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" +
               fmt_tick(fy) + "</text>\n";
    }
}

std::string header() {
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"540\" "
           "viewBox=\"0 0 900 540\">\n";
}

void append_legend(std::string& svg, const std::vector<ChartSeries>& series) {
    double y = kTop + 14;
    for (const ChartSeries& s : series) {
        if (s.name.empty())
            continue;
        svg += "<text x=\"" + fmt(kWidth - kRight - 8) + "\" y=\"" + fmt(y) +
               "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" +
               s.color + "\">" + escape_xml(s.name) + "</text>\n";
        y += 14;
    }
}

} // namespace

std::string line_chart_svg(const std::string& title, const std::string& x_label,
                           const std::string& y_label, const std::vector<ChartSeries>& series) {
    const Mapper m = fit_ranges(series, false);
    std::string svg = header();
    append_frame(svg, m, title, x_label, y_label);
    for (const ChartSeries& s : series) {
        svg += "<polyline class=\"series\" fill=\"none\" stroke=\"" + s.color +
               "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t i = 0; i < s.points.size(); ++i) {
            if (i)
                svg += " ";
            svg += fmt(m.sx(s.points[i].x)) + "," + fmt(m.sy(s.points[i].y));
        }
        svg += "\"/>\n";
    }
    append_legend(svg, series);
    svg += "</svg>\n";
    return svg;
}

std::string scatter_chart_svg(const std::string& title, const std::string& x_label,
                              const std::string& y_label, const std::vector<ChartSeries>& series,
                              bool draw_y_equals_x) {
    const Mapper m = fit_ranges(series, draw_y_equals_x);
    std::string svg = header();
    append_frame(svg, m, title, x_label, y_label);
    if (draw_y_equals_x) {
        const double lo = std::max(m.x.lo, m.y.lo);
        const double hi = std::min(m.x.hi, m.y.hi);
        svg += "<line class=\"ref-y-equals-x\" stroke=\"red\" stroke-width=\"1\" x1=\"" +
               fmt(m.sx(lo)) + "\" y1=\"" + fmt(m.sy(lo)) + "\" x2=\"" + fmt(m.sx(hi)) +
               "\" y2=\"" + fmt(m.sy(hi)) + "\"/>\n";
    }
    for (const ChartSeries& s : series) {
        svg += "<g class=\"series\" fill=\"" + s.color + "\">\n";
        for (const Point& p : s.points)
            svg += "<circle cx=\"" + fmt(m.sx(p.x)) + "\" cy=\"" + fmt(m.sy(p.y)) +
                   "\" r=\"2.5\"/>\n";
        svg += "</g>\n";
    }
    append_legend(svg, series);
    svg += "</svg>\n";
    return svg;
}

} // namespace asym
