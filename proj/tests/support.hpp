#pragma once

#include "backflow/backflow.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace testing_support {

using backflow::cplx;
using backflow::RationalSpec;
using backflow::Root;

inline constexpr double pi = std::numbers::pi;

inline double uniform(std::mt19937& rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uniform_int(std::mt19937& rng, int lo, int hi)
{
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool far_from(cplx z, const std::vector<Root>& roots, double d)
{
    for (const auto& r : roots)
        if (std::abs(z - r.position) < d)
            return false;
    return true;
}

// Poles in the lower half-plane, zeros anywhere off the real axis, m < n.
inline RationalSpec random_line_spec(std::mt19937& rng)
{
    std::vector<Root> poles, zeros;
    const int np = uniform_int(rng, 1, 3);
    int n = 0;
    while (static_cast<int>(poles.size()) < np) {
        const cplx b{uniform(rng, -2.0, 2.0), uniform(rng, -2.0, -0.3)};
        if (!far_from(b, poles, 0.3))
            continue;
        const int mult = uniform_int(rng, 1, 2);
        poles.push_back({b, mult});
        n += mult;
    }
    const int m = uniform_int(rng, 0, n - 1);
    while (static_cast<int>(zeros.size()) < m) {
        double im = uniform(rng, -2.0, 2.0);
        if (std::abs(im) < 0.15)
            im = std::copysign(0.15, im);
        const cplx a{uniform(rng, -2.0, 2.0), im};
        if (far_from(a, poles, 0.3) && far_from(a, zeros, 0.2))
            zeros.push_back({a, 1});
    }
    return RationalSpec::make(zeros, poles);
}

inline cplx random_polar(std::mt19937& rng, double rmin, double rmax)
{
    return std::polar(uniform(rng, rmin, rmax), uniform(rng, -pi, pi));
}

// Zero at the origin, further zeros away from the unit circle, poles
// outside it.
inline RationalSpec random_ring_spec(std::mt19937& rng)
{
    std::vector<Root> zeros{{cplx{0.0}, 1}}, poles;
    const int nz = uniform_int(rng, 0, 2);
    while (static_cast<int>(zeros.size()) < nz + 1) {
        const cplx a = uniform_int(rng, 0, 1) ? random_polar(rng, 0.2, 0.8) : random_polar(rng, 1.2, 3.0);
        if (far_from(a, zeros, 0.2))
            zeros.push_back({a, 1});
    }
    const int np = uniform_int(rng, 0, 2);
    while (static_cast<int>(poles.size()) < np) {
        const cplx b = random_polar(rng, 1.3, 3.0);
        if (far_from(b, zeros, 0.3) && far_from(b, poles, 0.3))
            poles.push_back({b, uniform_int(rng, 1, 2)});
    }
    return RationalSpec::make(zeros, poles);
}

inline RationalSpec example1(cplx a)
{
    return RationalSpec::make({{a, 1}}, {{cplx{0.0, -1.0}, 2}});
}

inline RationalSpec example3(double a, int n)
{
    return RationalSpec::make({{cplx{0.0}, 1}}, {{cplx{a, 0.0}, n}});
}

inline double rel_err(cplx got, cplx want)
{
    return std::abs(got - want) / std::abs(want);
}

} // namespace testing_support
