#pragma once

#include <boost/math/tools/minima.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

namespace backflow::detail {

struct Extremum {
    double x = 0.0;
    double value = std::numeric_limits<double>::infinity();
};

/// Minimum of g over the sorted sample abscissae, refined by Brent's method
/// on the bracket formed by the neighbours of the best sample.
template <class F>
Extremum minimize_sampled(F&& g, std::vector<double> xs)
{
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    Extremum best;
    std::size_t ibest = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double v = g(xs[i]);
        if (v < best.value) {
            best = {xs[i], v};
            ibest = i;
        }
    }
    if (xs.size() < 3)
        return best;
    const double lo = xs[ibest == 0 ? 0 : ibest - 1];
    const double hi = xs[std::min(ibest + 1, xs.size() - 1)];
    if (hi > lo) {
        const auto [xr, vr] = boost::math::tools::brent_find_minima(g, lo, hi, 52);
        if (vr < best.value)
            best = {xr, vr};
    }
    return best;
}

/// Sample abscissae x = tan(theta) on (-pi/2, pi/2) plus caller anchors.
inline std::vector<double> line_samples(std::size_t count, std::vector<double> anchors = {})
{
    const double pi = std::acos(-1.0);
    for (std::size_t i = 1; i <= count; ++i) {
        const double t = -0.5 * pi + pi * static_cast<double>(i) / static_cast<double>(count + 1);
        anchors.push_back(std::tan(t));
    }
    return anchors;
}

} // namespace backflow::detail
