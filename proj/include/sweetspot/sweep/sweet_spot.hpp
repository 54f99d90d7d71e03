#pragma once

#include "sweetspot/sweep/sweep.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace sweetspot {

inline constexpr double kDefaultWindowLo = 10.0;
inline constexpr double kDefaultWindowHi = 100.0;
inline constexpr std::size_t kDefaultSmoothingWidth = 5;

struct SweetSpot {
    double j_star = 0.0;
    double infidelity_star = 0.0; // raw mean infidelity at j_star
    double window_lo = kDefaultWindowLo;
    double window_hi = kDefaultWindowHi;
    bool boundary = false; // minimum sits on the first or last in-window grid point
    std::size_t grid_index = 0;
    std::vector<double> secondary_minima; // other interior local minima in the window
};

/// Centered moving average; near the ends the window is truncated to the
/// available points.
inline std::vector<double> moving_average(const std::vector<double>& v, std::size_t width)
{
    if (width < 1 || width % 2 == 0) throw std::invalid_argument("moving_average: width must be odd");
    const std::size_t half = width / 2;
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::size_t lo = i >= half ? i - half : 0;
        const std::size_t hi = std::min(v.size() - 1, i + half);
        double s = 0.0;
        for (std::size_t k = lo; k <= hi; ++k) s += v[k];
        out[i] = s / static_cast<double>(hi - lo + 1);
    }
    return out;
}

/// Windowed argmin of the smoothed curve; the reported infidelity is the
/// unsmoothed mean at that grid point.
inline SweetSpot find_sweet_spot(const std::vector<double>& couplings, const std::vector<double>& infidelity,
                                 double window_lo = kDefaultWindowLo, double window_hi = kDefaultWindowHi,
                                 std::size_t smoothing_width = kDefaultSmoothingWidth)
{
    if (couplings.size() != infidelity.size() || couplings.empty()) {
        throw std::invalid_argument("find_sweet_spot: couplings and infidelities must be non-empty and equal length");
    }
    if (!(window_lo <= window_hi)) throw std::invalid_argument("find_sweet_spot: window is inverted");
    std::vector<std::size_t> in_window;
    for (std::size_t i = 0; i < couplings.size(); ++i) {
        if (couplings[i] >= window_lo && couplings[i] <= window_hi) in_window.push_back(i);
    }
    if (in_window.empty()) {
        std::ostringstream msg;
        msg << "find_sweet_spot: no grid points inside window [" << window_lo << ", " << window_hi << "]";
        throw std::invalid_argument(msg.str());
    }
    const auto smooth = moving_average(infidelity, smoothing_width);

    std::size_t best = in_window.front();
    for (std::size_t i : in_window) {
        if (smooth[i] < smooth[best]) best = i; // strict: ties stay at the smaller J
    }
    SweetSpot spot;
    spot.j_star = couplings[best];
    spot.infidelity_star = infidelity[best];
    spot.window_lo = window_lo;
    spot.window_hi = window_hi;
    spot.grid_index = best;
    spot.boundary = best == in_window.front() || best == in_window.back();
    for (std::size_t n = 1; n + 1 < in_window.size(); ++n) {
        const std::size_t i = in_window[n];
        if (i != best && smooth[i] < smooth[i - 1] && smooth[i] <= smooth[i + 1]) {
            spot.secondary_minima.push_back(couplings[i]);
        }
    }
    return spot;
}

inline SweetSpot find_sweet_spot(const SweepResult& res, double window_lo = kDefaultWindowLo,
                                 double window_hi = kDefaultWindowHi)
{
    return find_sweet_spot(res.couplings(), res.infidelities(), window_lo, window_hi);
}

} // namespace sweetspot
