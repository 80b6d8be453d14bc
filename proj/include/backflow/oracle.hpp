#pragma once

// Brute-force numerical reference computations. Nothing here uses residues,
// Taylor coefficients, or the Lorentzian formulas; every value comes from
// direct quadrature or finite differences of psi itself, so analytic results
// elsewhere in the library can be checked against it.

#include "backflow/contwave.hpp"
#include "backflow/error.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <vector>

namespace backflow::oracle {

struct QuadratureResult {
    cplx value{};
    double est_error = 0.0;
    std::size_t evaluations = 0;
};

struct Domain {
    enum class Kind { Line, Period };
    Kind kind = Kind::Line;
    double period = 1.0;

    static Domain line() { return {Kind::Line, 1.0}; }
    static Domain ring(double L) { return {Kind::Period, L}; }
};

namespace detail {

using boost::math::quadrature::gauss_kronrod;

// Kronrod error estimates reach the roundoff floor near this level.
inline constexpr double kMinRelativeTolerance = 1e-12;

struct Accumulator {
    cplx value{};
    double error = 0.0;
    std::size_t evaluations = 0;
};

// Adaptive G30K61 of a complex integrand over [a, b], real and imaginary
// parts separately.
template <class F>
void add_gk(Accumulator& acc, F&& f, double a, double b, double tol)
{
    tol = std::max(tol, kMinRelativeTolerance);
    double er = 0.0, ei = 0.0;
    auto re = [&](double x) { ++acc.evaluations; return f(x).real(); };
    auto im = [&](double x) { ++acc.evaluations; return f(x).imag(); };
    const double vr = gauss_kronrod<double, 61>::integrate(re, a, b, 15, tol, &er);
    const double vi = gauss_kronrod<double, 61>::integrate(im, a, b, 15, tol, &ei);
    acc.value += cplx{vr, vi};
    acc.error += std::hypot(er, ei);
}

// Integral of f over (0, inf) for an exponentially damped integrand.
template <class F>
cplx half_line_damped(Accumulator& acc, F&& f, double tol)
{
    tol = std::max(tol, kMinRelativeTolerance);
    boost::math::quadrature::exp_sinh<double> integrator;
    double er = 0.0, ei = 0.0;
    auto re = [&](double t) { ++acc.evaluations; return f(t).real(); };
    auto im = [&](double t) { ++acc.evaluations; return f(t).imag(); };
    const double vr = integrator.integrate(re, tol, &er);
    const double vi = integrator.integrate(im, tol, &ei);
    acc.error += std::hypot(er, ei);
    return {vr, vi};
}

inline double root_radius(const RationalSpec& spec)
{
    double r = 0.0;
    for (const auto& a : spec.zeros())
        r = std::max(r, std::abs(a.position));
    for (const auto& b : spec.poles())
        r = std::max(r, std::abs(b.position));
    return r;
}

} // namespace detail

/// (2 pi)^{-1/2} int psi(x) exp(-i p x) dx with hbar = 1.
///
/// The window [-X, X] is integrated on the real axis, split at the root
/// landmarks and, for |p| > 5, at the oscillation spacing pi/|p|. The tails
/// beyond +-X are integrated along vertical rays x = +-X - i sgn(p) t, on
/// which the integrand decays like exp(-|p| t); X exceeds every |Re b| so no
/// pole lies between a ray and the real axis. At p = 0 the tails are taken
/// as the symmetric limit of int_{-R}^{R}.
inline QuadratureResult fourier_quadrature(const LineWaveFunction& wf, double p, double tol)
{
    if (!(tol > 0.0))
        throw SpecViolation("quadrature tolerance must be positive");
    const double X = 4.0 * (1.0 + detail::root_radius(wf.spec()));
    const double piece_tol = tol * 1e-2;

    std::vector<double> breaks{-X, X};
    for (double x : backflow::detail::root_landmarks(wf.spec()))
        if (x > -X && x < X)
            breaks.push_back(x);
    const double spacing = std::abs(p) > 5.0 ? std::numbers::pi / std::abs(p) : 1.0;
    for (double x = -X + spacing; x < X; x += spacing)
        breaks.push_back(x);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    detail::Accumulator acc;
    auto core = [&](double x) { return wf(x) * std::polar(1.0, -p * x); };
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        detail::add_gk(acc, core, breaks[i], breaks[i + 1], piece_tol);

    if (p != 0.0) {
        const double s = p > 0.0 ? 1.0 : -1.0;
        const double ap = std::abs(p);
        const cplx is{0.0, s};
        auto right = [&](double t) { return wf.at(cplx{X, -s * t}) * std::exp(-ap * t); };
        auto left = [&](double t) { return wf.at(cplx{-X, -s * t}) * std::exp(-ap * t); };
        const cplx r = detail::half_line_damped(acc, right, piece_tol);
        const cplx l = detail::half_line_damped(acc, left, piece_tol);
        acc.value += -is * std::polar(1.0, -p * X) * r + is * std::polar(1.0, p * X) * l;
    } else {
        // x = X/u folds both tails onto (0, 1]; the symmetric sum decays fast
        // enough for the integrand to stay bounded as u -> 0
        auto tails = [&](double u) {
            const double x = X / u;
            return (wf(x) + wf(-x)) * (X / (u * u));
        };
        detail::add_gk(acc, tails, 0.0, 1.0, piece_tol);
    }

    const double pre = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    QuadratureResult out{acc.value * pre, acc.error * pre, acc.evaluations};
    if (!std::isfinite(out.value.real()) || !std::isfinite(out.value.imag())
        || out.est_error > tol * std::max(1.0, std::abs(out.value)))
        throw QuadratureFailure("Fourier quadrature error estimate above tolerance");
    return out;
}

/// Centered difference of the unwrapped phase of psi.
template <class Psi>
double phase_gradient_fd(const Psi& psi, double x, double h)
{
    if (!(h > 0.0))
        throw SpecViolation("finite-difference step must be positive");
    const cplx a = psi(x - h);
    const cplx b = psi(x + h);
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0)
        throw SingularPoint("psi vanishes at a finite-difference node");
    double d = std::arg(b) - std::arg(a);
    const double two_pi = 2.0 * std::numbers::pi;
    while (d > std::numbers::pi)
        d -= two_pi;
    while (d < -std::numbers::pi)
        d += two_pi;
    // 2 h |k| < pi/2 for any resolvable phase; a jump near pi is a zero of psi
    if (std::abs(d) >= 0.5 * std::numbers::pi)
        throw SingularPoint("phase jump across the stencil (zero of psi)");
    return d / (2.0 * h);
}

/// int |psi|^2 over the real line (x = tan theta substitution, adaptive
/// G30K61 on 128 theta panels) or over one period (trapezoid doubling).
template <class Psi>
QuadratureResult norm_quadrature(const Psi& psi, Domain domain, double tol)
{
    if (!(tol > 0.0))
        throw SpecViolation("quadrature tolerance must be positive");
    QuadratureResult out;
    if (domain.kind == Domain::Kind::Line) {
        detail::Accumulator acc;
        auto g = [&](double theta) {
            const double x = std::tan(theta);
            return cplx{std::norm(psi(x)) * (1.0 + x * x), 0.0};
        };
        constexpr int kPanels = 128;
        const double h = std::numbers::pi / kPanels;
        for (int i = 0; i < kPanels; ++i) {
            const double a = -0.5 * std::numbers::pi + h * i;
            detail::add_gk(acc, g, a, a + h, tol * 1e-2);
        }
        out = {acc.value, acc.error, acc.evaluations};
        if (out.est_error > tol * std::abs(out.value))
            throw QuadratureFailure("line norm quadrature above tolerance");
        return out;
    }
    const double L = domain.period;
    auto trap = [&](std::size_t m) {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            s += std::norm(psi(-0.5 * L + L * static_cast<double>(j) / static_cast<double>(m)));
        out.evaluations += m;
        return s * L / static_cast<double>(m);
    };
    std::size_t m = 64;
    double prev = trap(m);
    while (m < (std::size_t{1} << 22)) {
        m *= 2;
        const double cur = trap(m);
        if (std::abs(cur - prev) < tol * std::abs(cur)) {
            out.value = cur;
            out.est_error = std::abs(cur - prev);
            return out;
        }
        prev = cur;
    }
    throw QuadratureFailure("periodic trapezoid rule did not converge");
}

/// c_k = L^{-1/2} int_{-L/2}^{L/2} psi(x) exp(-i 2 pi k x / L) dx by the
/// M-point trapezoid rule (spectrally accurate for smooth periodic psi).
template <class Psi>
cplx ring_fourier_coefficient(const Psi& psi, double L, int k, std::size_t points = 4096)
{
    cplx s{0.0};
    for (std::size_t j = 0; j < points; ++j) {
        const double x = -0.5 * L + L * static_cast<double>(j) / static_cast<double>(points);
        s += psi(x) * std::polar(1.0, -2.0 * std::numbers::pi * k * x / L);
    }
    return s * (std::sqrt(L) / static_cast<double>(points));
}

/// Closed-form normalization of psi = N w / (w - a)^n on a ring of period L
/// (w = exp(i 2 pi x / L), real a > 1):
///   N = (a-1)^n sqrt(pi / (2 c I)) / sqrt(L),  c = (a-1)/(a+1),
///   I = int_0^inf (1 + c^2 t^2)^{n-1} / (1 + t^2)^n dt,
/// with I evaluated by quadrature (t = tan phi).
inline double multipole_ring_norm(double a, int n, double L = 1.0, double tol = 1e-13)
{
    if (!(a > 1.0) || n < 1 || !(L > 0.0))
        throw SpecViolation("multipole ring normalization needs a > 1, n >= 1, L > 0");
    const double c = (a - 1.0) / (a + 1.0);
    auto g = [&](double phi) {
        const double t = std::tan(phi);
        const double v = std::pow(1.0 + c * c * t * t, n - 1) / std::pow(1.0 + t * t, n);
        return cplx{v * (1.0 + t * t), 0.0};
    };
    detail::Accumulator acc;
    detail::add_gk(acc, g, 0.0, 0.5 * std::numbers::pi, tol);
    const double I = acc.value.real();
    return std::pow(a - 1.0, n) * std::sqrt(std::numbers::pi / (2.0 * c * I)) / std::sqrt(L);
}

} // namespace backflow::oracle
