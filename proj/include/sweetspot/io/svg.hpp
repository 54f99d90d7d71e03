#pragma once

// Minimal log-x line plot: axes, decade ticks, shaded window, one polyline.

#include "sweetspot/io/csv.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

namespace sweetspot::io {

struct PlotOptions {
    double window_lo = 10.0;
    double window_hi = 100.0;
    std::string title = "mean infidelity";
    std::string y_label = "1 - F";
    int width = 640;
    int height = 400;
};

inline std::string svg_log_plot(const std::vector<double>& x, const std::vector<double>& y, const PlotOptions& opt)
{
    if (x.size() != y.size() || x.empty()) throw FormatError("svg_log_plot: need equal-length, non-empty series");
    const double left = 70, right = 20, top = 40, bottom = 50;
    const double pw = opt.width - left - right;
    const double ph = opt.height - top - bottom;
    const double lx0 = std::floor(std::log10(*std::min_element(x.begin(), x.end())));
    double lx1 = std::ceil(std::log10(*std::max_element(x.begin(), x.end())));
    if (lx1 <= lx0) lx1 = lx0 + 1;
    double y0 = std::min(0.0, *std::min_element(y.begin(), y.end()));
    double y1 = *std::max_element(y.begin(), y.end());
    if (!(y1 > y0)) y1 = y0 + 1.0;

    auto sx = [&](double v) { return left + pw * (std::log10(v) - lx0) / (lx1 - lx0); };
    auto sy = [&](double v) { return top + ph * (1.0 - (v - y0) / (y1 - y0)); };
    auto f = [](double v) { return format_double(std::round(v * 100.0) / 100.0); };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const double wl = std::clamp(opt.window_lo, std::pow(10.0, lx0), std::pow(10.0, lx1));
    const double wh = std::clamp(opt.window_hi, std::pow(10.0, lx0), std::pow(10.0, lx1));
    if (wh > wl) {
        os << "<rect x=\"" << f(sx(wl)) << "\" y=\"" << f(top) << "\" width=\"" << f(sx(wh) - sx(wl))
           << "\" height=\"" << f(ph) << "\" fill=\"#dde8f5\"/>\n";
    }
    os << "<line x1=\"" << f(left) << "\" y1=\"" << f(top + ph) << "\" x2=\"" << f(left + pw) << "\" y2=\""
       << f(top + ph) << "\" stroke=\"black\"/>\n";
    os << "<line x1=\"" << f(left) << "\" y1=\"" << f(top) << "\" x2=\"" << f(left) << "\" y2=\"" << f(top + ph)
       << "\" stroke=\"black\"/>\n";
    for (double d = lx0; d <= lx1 + 1e-9; d += 1.0) {
        const double px = sx(std::pow(10.0, d));
        os << "<line x1=\"" << f(px) << "\" y1=\"" << f(top + ph) << "\" x2=\"" << f(px) << "\" y2=\""
           << f(top + ph + 5) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << f(px) << "\" y=\"" << f(top + ph + 18) << "\" text-anchor=\"middle\">1e"
           << static_cast<int>(d) << "</text>\n";
    }
    for (int k = 0; k <= 4; ++k) {
        const double v = y0 + (y1 - y0) * k / 4.0;
        os << "<text x=\"" << f(left - 6) << "\" y=\"" << f(sy(v) + 4) << "\" text-anchor=\"end\">"
           << format_double(std::round(v * 1e4) / 1e4) << "</text>\n";
    }
    os << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < x.size(); ++i) os << (i ? " " : "") << f(sx(x[i])) << "," << f(sy(y[i]));
    os << "\"/>\n";
    os << "<text x=\"" << f(left + pw / 2) << "\" y=\"" << f(opt.height - 12.0)
       << "\" text-anchor=\"middle\">J / lambda0</text>\n";
    os << "<text x=\"16\" y=\"" << f(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
       << f(top + ph / 2) << ")\">" << opt.y_label << "</text>\n";
    os << "<text x=\"" << f(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\">" << opt.title << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

} // namespace sweetspot::io
