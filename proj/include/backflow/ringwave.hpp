#pragma once

// Periodic wave functions on a ring of circumference L:
//   psi(x) = N f(exp(i 2 pi x / L)),
// with f analytic in the closed unit disk and vanishing at the origin, so the
// momentum spectrum p_k = 2 pi k / L contains only k >= 1.

#include "backflow/error.hpp"
#include "backflow/extremum.hpp"
#include "backflow/polyring.hpp"
#include "backflow/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

namespace backflow {

inline constexpr double kUnitCircleMargin = 1e-9;
inline constexpr double kRingTailTolerance = 1e-16;
inline constexpr std::size_t kRingMaxTerms = 100000;

class RingWaveFunction {
public:
    const RationalSpec& spec() const noexcept { return spec_; }
    double period() const noexcept { return period_; }
    double norm_constant() const noexcept { return norm_; }

    /// Taylor coefficients [z^k] f for k = 0..K_max (unnormalized).
    std::span<const cplx> taylor() const noexcept { return taylor_; }

    cplx operator()(double x) const noexcept
    {
        return norm_ * spec_(std::polar(1.0, 2.0 * std::numbers::pi * x / period_));
    }

private:
    RingWaveFunction(RationalSpec spec, double period, double norm, std::vector<cplx> taylor)
        : spec_(std::move(spec)), period_(period), norm_(norm), taylor_(std::move(taylor))
    {}
    friend RingWaveFunction make_ring_wavefunction(RationalSpec spec, double period);

    RationalSpec spec_;
    double period_ = 1.0;
    double norm_ = 1.0;
    std::vector<cplx> taylor_;
};

inline void validate_ring_spec(const RationalSpec& spec, double period)
{
    if (!(period > 0.0) || !std::isfinite(period))
        throw SpecViolation("ring period L must be positive and finite");
    for (const auto& b : spec.poles())
        if (!(std::abs(b.position) > 1.0 + kUnitCircleMargin))
            throw SpecViolation("every pole must lie outside the unit circle (|b| > 1)");
    bool origin = false;
    for (const auto& a : spec.zeros())
        if (std::abs(a.position) < 1e-12)
            origin = true;
    if (!origin)
        throw SpecViolation("f must vanish at the origin (a zero at z = 0) for a positive spectrum");
}

namespace detail {

// Taylor coefficients of f about 0; with poles the series ends at the first
// coefficient below the tail threshold.
inline std::vector<cplx> ring_taylor(const RationalSpec& spec)
{
    const Poly numer = spec.numerator();
    std::vector<cplx> t;
    if (spec.poles().empty()) {
        t.assign(numer.coeffs().begin(), numer.coeffs().end());
    } else {
        std::size_t order = 64;
        for (;;) {
            // one factor 1/(z - b) at a time: r_k = p_k + r_{k-1}/b, q = -r/b
            std::vector<cplx> s = Series::from_poly(numer, 0.0, order).coeffs;
            for (const auto& b : spec.poles()) {
                const cplx inv = 1.0 / b.position;
                for (int rep = 0; rep < b.multiplicity; ++rep) {
                    cplx prev{0.0};
                    for (auto& c : s) {
                        prev = c + prev * inv;
                        c = -prev * inv;
                    }
                }
            }
            double peak = 0.0;
            for (const auto& c : s)
                peak = std::max(peak, std::abs(c));
            bool tail_ok = true;
            for (std::size_t j = order - 4; j < order; ++j)
                if (std::abs(s[j]) >= kRingTailTolerance * peak)
                    tail_ok = false;
            if (tail_ok) {
                t = std::move(s);
                break;
            }
            if (order >= kRingMaxTerms)
                throw TruncationFailure("Taylor tail above threshold at the K_max cap");
            order = std::min(order * 2, kRingMaxTerms);
        }
    }
    double peak = 0.0;
    for (const auto& c : t)
        peak = std::max(peak, std::abs(c));
    std::size_t last = 0;
    for (std::size_t k = 0; k < t.size(); ++k)
        if (std::abs(t[k]) >= kRingTailTolerance * peak)
            last = k;
    // with poles, keep the first coefficient below the threshold as the last
    t.resize(spec.poles().empty() ? last + 1 : std::min(last + 2, t.size()));
    return t;
}

// Mean of |f|^2 over the unit circle by the trapezoid rule, doubling the
// point count until successive estimates agree.
inline double circle_mean_square(const RationalSpec& spec)
{
    const double two_pi = 2.0 * std::numbers::pi;
    auto mean = [&](std::size_t m) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            s += std::norm(spec(std::polar(1.0, two_pi * static_cast<double>(j) / static_cast<double>(m))));
        return s / static_cast<double>(m);
    };
    std::size_t m = 256;
    double prev = mean(m);
    while (m < (std::size_t{1} << 22)) {
        m *= 2;
        const double cur = mean(m);
        if (std::abs(cur - prev) <= 1e-14 * std::abs(cur))
            return cur;
        prev = cur;
    }
    throw QuadratureFailure("trapezoid normalization on the circle did not converge");
}

inline double ring_term(cplx w, const Root& r) noexcept
{
    const double d = std::norm(w - r.position);
    if (d < 1e-24)
        return 0.5; // limit for a root on the unit circle, away from the point itself
    return (1.0 - (w * std::conj(r.position)).real()) / d;
}

inline double ring_wavenumber_regular(const RationalSpec& spec, double period, double x) noexcept
{
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * x / period);
    double s = 0.0;
    for (const auto& a : spec.zeros())
        s += a.multiplicity * ring_term(w, a);
    for (const auto& b : spec.poles())
        s -= b.multiplicity * ring_term(w, b);
    return 2.0 * std::numbers::pi / period * s;
}

inline bool ring_zero_at(const RationalSpec& spec, double period, double x) noexcept
{
    const cplx w = std::polar(1.0, 2.0 * std::numbers::pi * x / period);
    for (const auto& a : spec.zeros())
        if (std::abs(w - a.position) <= 1e-12)
            return true;
    return false;
}

} // namespace detail

/// Validates, computes the Taylor coefficients, and fixes N by Parseval:
/// N = (L sum_k |[z^k] f|^2)^{-1/2}. The Parseval sum is cross-checked
/// against the trapezoid rule over one period.
inline RingWaveFunction make_ring_wavefunction(RationalSpec spec, double period = 1.0)
{
    validate_ring_spec(spec, period);
    auto taylor = detail::ring_taylor(spec);
    double sum = 0.0;
    for (std::size_t k = 1; k < taylor.size(); ++k)
        sum += std::norm(taylor[k]);
    const double trap = detail::circle_mean_square(spec);
    if (std::abs(trap - sum) > 1e-8 * sum)
        throw QuadratureFailure("Parseval sum disagrees with trapezoid quadrature");
    const double norm = 1.0 / std::sqrt(period * sum);
    return RingWaveFunction(std::move(spec), period, norm, std::move(taylor));
}

struct MomentumSpectrumRing {
    std::vector<cplx> coeffs; // coeffs[k-1] = c_k, k = 1..k_max()
    double period = 1.0;

    int k_max() const noexcept { return static_cast<int>(coeffs.size()); }

    cplx coefficient(int k) const noexcept
    {
        if (k < 1 || k > k_max())
            return cplx{0.0};
        return coeffs[static_cast<std::size_t>(k - 1)];
    }

    double momentum(int k) const noexcept { return 2.0 * std::numbers::pi * k / period; }
};

/// c_k = N sqrt(L) [z^k] f for k >= 1.
inline MomentumSpectrumRing ring_spectrum(const RingWaveFunction& wf)
{
    MomentumSpectrumRing sp;
    sp.period = wf.period();
    const double scale = wf.norm_constant() * std::sqrt(wf.period());
    const auto t = wf.taylor();
    for (std::size_t k = 1; k < t.size(); ++k)
        sp.coeffs.push_back(scale * t[k]);
    return sp;
}

inline double ring_wavenumber(const RingWaveFunction& wf, double x)
{
    if (detail::ring_zero_at(wf.spec(), wf.period(), x))
        throw SingularPoint("local wave number undefined at a zero of psi on the circle");
    return detail::ring_wavenumber_regular(wf.spec(), wf.period(), x);
}

inline double ring_current(const RingWaveFunction& wf, double x)
{
    if (detail::ring_zero_at(wf.spec(), wf.period(), x))
        return 0.0;
    return std::norm(wf(x)) * detail::ring_wavenumber_regular(wf.spec(), wf.period(), x);
}

/// Intervals of k < 0 within one period, located by dense sampling with
/// bisection refinement. Intervals never wrap: each is reported with its
/// lower end in [-L/2, L/2) and may extend past L/2.
inline BackflowReport ring_backflow_intervals(const RingWaveFunction& wf, std::size_t samples = 4096)
{
    const double L = wf.period();
    auto k = [&](double x) { return detail::ring_wavenumber_regular(wf.spec(), L, x); };
    auto wrap = [&](double x) { return x - L * std::floor(x / L + 0.5); };

    const double step = L / static_cast<double>(samples);
    double start = -0.5 * L;
    double kmax = k(start);
    for (std::size_t i = 1; i < samples; ++i) {
        const double x = -0.5 * L + step * static_cast<double>(i);
        const double v = k(x);
        if (v > kmax) {
            kmax = v;
            start = x;
        }
    }

    std::vector<double> xs(samples + 1), ks(samples + 1);
    for (std::size_t i = 0; i <= samples; ++i) {
        xs[i] = start + step * static_cast<double>(i);
        ks[i] = k(xs[i]);
    }

    auto crossing = [&](double lo, double hi) {
        double flo = k(lo);
        while (hi - lo > 1e-12 * L) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi)
                break;
            const double fm = k(mid);
            if ((fm < 0.0) == (flo < 0.0)) {
                lo = mid;
                flo = fm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    };

    struct Crossing {
        double x;
        bool down; // k goes from >= 0 to < 0
    };
    std::vector<Crossing> cross;
    for (std::size_t i = 0; i < samples; ++i) {
        const bool n0 = ks[i] < 0.0;
        const bool n1 = ks[i + 1] < 0.0;
        if (n0 != n1) {
            cross.push_back({crossing(xs[i], xs[i + 1]), !n0});
            continue;
        }
        // a dip narrower than the sampling step
        if (!n0 && i > 0 && ks[i] <= ks[i - 1] && ks[i] <= ks[i + 1]) {
            const auto [xm, km] = boost::math::tools::brent_find_minima(k, xs[i - 1], xs[i + 1], 52);
            if (km < 0.0) {
                cross.push_back({crossing(xs[i - 1], xm), true});
                cross.push_back({crossing(xm, xs[i + 1]), false});
            }
        }
    }
    std::sort(cross.begin(), cross.end(), [](const Crossing& a, const Crossing& b) { return a.x < b.x; });

    BackflowReport rep;
    if (kmax < 0.0) {
        rep.intervals.push_back({-0.5 * L, 0.5 * L, false});
    } else {
        for (std::size_t i = 0; i + 1 < cross.size(); ++i) {
            if (cross[i].down && !cross[i + 1].down) {
                const double shift = wrap(cross[i].x) - cross[i].x;
                rep.intervals.push_back({cross[i].x + shift, cross[i + 1].x + shift, false});
            }
        }
    }
    std::sort(rep.intervals.begin(), rep.intervals.end(),
              [](const BackflowInterval& a, const BackflowInterval& b) { return a.lo < b.lo; });

    const auto kmin = detail::minimize_sampled(k, xs);
    const auto jmin = detail::minimize_sampled(
        [&](double x) { return std::norm(wf(x)) * k(x); }, xs);
    rep.min_wavenumber = kmin.value;
    rep.argmin_wavenumber = wrap(kmin.x);
    rep.min_current = jmin.value;
    rep.argmin_current = wrap(jmin.x);
    return rep;
}

} // namespace backflow
