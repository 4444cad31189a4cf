#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "wherald/csv.hpp"

namespace wherald {
namespace plot {

struct PlotSpec {
    std::string x_col;
    std::string y_col;
    std::string series_col;  // empty: single series
    std::string title;
};

namespace detail {

inline std::string num_label(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

inline const char* palette(std::size_t i) {
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    return colors[i % 8];
}

}  // namespace detail

/// Render CSV columns as a self-contained SVG line chart, one polyline per
/// value of the series column. Rows whose x or y cell is empty are skipped.
inline std::string render_svg(const csv::Table& table, const PlotSpec& spec) {
    const std::size_t xc = table.column(spec.x_col);
    const std::size_t yc = table.column(spec.y_col);
    const bool has_series = !spec.series_col.empty();
    const std::size_t sc = has_series ? table.column(spec.series_col) : 0;

    std::map<std::string, std::vector<std::pair<double, double>>> series;
    for (const auto& row : table.rows) {
        if (row[xc].empty() || row[yc].empty()) continue;
        const std::string key = has_series ? row[sc] : "";
        series[key].emplace_back(csv::parse_double(row[xc]), csv::parse_double(row[yc]));
    }
    if (series.empty()) throw std::invalid_argument("plot: no plottable rows");

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (auto& [key, pts] : series) {
        std::stable_sort(pts.begin(), pts.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        for (const auto& [x, y] : pts) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    }
    if (xmax == xmin) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (ymax == ymin) {
        ymin -= 0.5;
        ymax += 0.5;
    }

    const double W = 860, H = 540, ml = 80, mr = 170, mt = 50, mb = 60;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        svg << "<text x=\"" << W / 2 << "\" y=\"28\" text-anchor=\"middle\" font-size=\"18\" "
            << "font-family=\"sans-serif\">" << spec.title << "</text>\n";

    // axes and ticks
    svg << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << W - ml - mr << "\" height=\""
        << H - mt - mb << "\" fill=\"none\" stroke=\"black\"/>\n";
    const int nticks = 6;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = xmin + (xmax - xmin) * i / nticks;
        const double fy = ymin + (ymax - ymin) * i / nticks;
        svg << "<line x1=\"" << px(fx) << "\" y1=\"" << H - mb << "\" x2=\"" << px(fx) << "\" y2=\""
            << H - mb + 5 << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << px(fx) << "\" y=\"" << H - mb + 20
            << "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">"
            << detail::num_label(fx) << "</text>\n"
            << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(fy) << "\" x2=\"" << ml << "\" y2=\""
            << py(fy) << "\" stroke=\"black\"/>\n"
            << "<text x=\"" << ml - 8 << "\" y=\"" << py(fy) + 4
            << "\" text-anchor=\"end\" font-size=\"12\" font-family=\"sans-serif\">"
            << detail::num_label(fy) << "</text>\n";
    }
    svg << "<text x=\"" << ml + (W - ml - mr) / 2 << "\" y=\"" << H - 15
        << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\">" << spec.x_col
        << "</text>\n"
        << "<text x=\"20\" y=\"" << mt + (H - mt - mb) / 2
        << "\" text-anchor=\"middle\" font-size=\"14\" font-family=\"sans-serif\" transform=\"rotate(-90 20 "
        << mt + (H - mt - mb) / 2 << ")\">" << spec.y_col << "</text>\n";

    std::size_t idx = 0;
    for (const auto& [key, pts] : series) {
        svg << "<polyline fill=\"none\" stroke=\"" << detail::palette(idx) << "\" stroke-width=\"1.8\" points=\"";
        for (const auto& [x, y] : pts) svg << px(x) << "," << py(y) << " ";
        svg << "\"/>\n";
        const double ly = mt + 18 + 20 * static_cast<double>(idx);
        svg << "<line x1=\"" << W - mr + 10 << "\" y1=\"" << ly << "\" x2=\"" << W - mr + 34
            << "\" y2=\"" << ly << "\" stroke=\"" << detail::palette(idx) << "\" stroke-width=\"2\"/>\n"
            << "<text x=\"" << W - mr + 40 << "\" y=\"" << ly + 4
            << "\" font-size=\"12\" font-family=\"sans-serif\">"
            << (has_series ? spec.series_col + "=" + key : spec.y_col) << "</text>\n";
        ++idx;
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace plot
}  // namespace wherald
