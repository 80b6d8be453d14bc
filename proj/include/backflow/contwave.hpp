#pragma once

// Wave functions on the real line built from a rational function whose poles
// all lie in the lower half-plane: psi(x) = N f(x). Units hbar = mu = 1, x in
// units of x0, p in units of hbar/x0, current in units of p0^2/(mu hbar).

#include "backflow/error.hpp"
#include "backflow/extremum.hpp"
#include "backflow/polyring.hpp"
#include "backflow/quadrature.hpp"
#include "backflow/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace backflow {

inline constexpr double kRealZeroTolerance = 1e-12;

class LineWaveFunction {
public:
    const RationalSpec& spec() const noexcept { return spec_; }
    double norm_constant() const noexcept { return norm_; }

    /// n - m; at least 1.
    int order_gap() const noexcept
    {
        return spec_.denominator_degree() - spec_.numerator_degree();
    }

    cplx operator()(double x) const noexcept { return norm_ * spec_(cplx{x, 0.0}); }

    /// Analytic continuation N f(z).
    cplx at(cplx z) const noexcept { return norm_ * spec_(z); }

private:
    LineWaveFunction(RationalSpec spec, double norm) : spec_(std::move(spec)), norm_(norm) {}
    friend LineWaveFunction make_line_wavefunction(RationalSpec spec);

    RationalSpec spec_;
    double norm_ = 1.0;
};

inline void validate_line_spec(const RationalSpec& spec)
{
    if (spec.numerator_degree() >= spec.denominator_degree())
        throw SpecViolation("square integrability requires m < n (numerator degree "
                            + std::to_string(spec.numerator_degree()) + ", denominator degree "
                            + std::to_string(spec.denominator_degree()) + ")");
    for (const auto& p : spec.poles())
        if (!(p.position.imag() < 0.0))
            throw SpecViolation("every pole must satisfy Im(b) < 0");
}

namespace detail {

// Interior break points in x for integrating or sampling around the root
// cluster: the real part of every root and its half-width shoulders.
inline std::vector<double> root_landmarks(const RationalSpec& spec)
{
    std::vector<double> out;
    auto add = [&](const Root& r) {
        const double c = r.position.real();
        const double w = std::abs(r.position.imag());
        out.push_back(c);
        if (w > 0.0) {
            out.push_back(c - w);
            out.push_back(c + w);
        }
    };
    for (const auto& r : spec.zeros())
        add(r);
    for (const auto& r : spec.poles())
        add(r);
    return out;
}

inline double line_norm_integral(const RationalSpec& spec, double rel_tol)
{
    const double half_pi = 0.5 * std::numbers::pi;
    std::vector<double> breaks{-half_pi, half_pi};
    for (double x : root_landmarks(spec))
        breaks.push_back(std::atan(x));
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

    auto integrand = [&](double theta) {
        const double x = std::tan(theta);
        return std::norm(spec(cplx{x, 0.0})) * (1.0 + x * x);
    };
    const auto r = quad::integrate<double>(integrand, breaks, rel_tol, 0.0, 40000);
    if (!r.converged)
        throw QuadratureFailure("normalization integral did not reach relative tolerance");
    return r.value;
}

inline bool is_real_zero(const Root& r) noexcept
{
    return std::abs(r.position.imag()) <= kRealZeroTolerance;
}

// Lorentzian sum with real zeros left out (they contribute nothing away from
// their own location).
inline double lorentzian_wavenumber(const RationalSpec& spec, double x) noexcept
{
    double k = 0.0;
    for (const auto& a : spec.zeros())
        if (!is_real_zero(a))
            k += a.multiplicity * a.position.imag() / std::norm(x - a.position);
    for (const auto& b : spec.poles())
        k -= b.multiplicity * b.position.imag() / std::norm(x - b.position);
    return k;
}

inline const Root* real_zero_at(const RationalSpec& spec, double x) noexcept
{
    for (const auto& a : spec.zeros())
        if (is_real_zero(a) && std::abs(x - a.position.real()) <= kRealZeroTolerance)
            return &a;
    return nullptr;
}

} // namespace detail

/// Validates the spec and fixes N from the normalization integral.
inline LineWaveFunction make_line_wavefunction(RationalSpec spec)
{
    validate_line_spec(spec);
    const double integral = detail::line_norm_integral(spec, 1e-10);
    if (!(integral > 0.0) || !std::isfinite(integral))
        throw QuadratureFailure("normalization integral is not positive and finite");
    return LineWaveFunction(std::move(spec), 1.0 / std::sqrt(integral));
}

inline cplx eval_psi(const LineWaveFunction& wf, double x) noexcept { return wf(x); }

struct MomentumSpectrumLine {
    struct Term {
        cplx pole{};
        std::vector<cplx> coeffs; // c_{l,0..n_l-1}
    };

    std::vector<Term> terms;
    int order_gap = 1;
};

/// Per-pole residue coefficients. With t_j the Taylor coefficients of
/// f_l(z) = (z - b_l)^{n_l} f(z) about b_l,
///   c_{l,k} = -i N sqrt(2 pi) t_{n_l-k-1} / k!
inline MomentumSpectrumLine momentum_spectrum(const LineWaveFunction& wf)
{
    const auto& spec = wf.spec();
    const Poly numer = spec.numerator();
    const cplx prefactor = cplx{0.0, -1.0} * wf.norm_constant() * std::sqrt(2.0 * std::numbers::pi);

    MomentumSpectrumLine out;
    out.order_gap = wf.order_gap();
    const auto poles = spec.poles();
    for (std::size_t l = 0; l < poles.size(); ++l) {
        std::vector<Root> others;
        for (std::size_t j = 0; j < poles.size(); ++j)
            if (j != l)
                others.push_back(poles[j]);
        const cplx b = poles[l].position;
        const auto nl = static_cast<std::size_t>(poles[l].multiplicity);
        const Series taylor = series_quotient(Series::from_poly(numer, b, nl),
                                              Series::from_poly(poly_from_roots(others), b, nl), nl);
        MomentumSpectrumLine::Term term{b, std::vector<cplx>(nl)};
        double factorial = 1.0;
        for (std::size_t k = 0; k < nl; ++k) {
            if (k > 0)
                factorial *= static_cast<double>(k);
            term.coeffs[k] = prefactor * taylor[nl - k - 1] / factorial;
        }
        out.terms.push_back(std::move(term));
    }
    return out;
}

namespace detail {

inline cplx positive_spectrum(const MomentumSpectrumLine& sp, double p) noexcept
{
    const cplx mip{0.0, -p};
    cplx total{0.0};
    for (const auto& t : sp.terms) {
        cplx poly{0.0};
        for (auto it = t.coeffs.rbegin(); it != t.coeffs.rend(); ++it)
            poly = poly * mip + *it;
        total += poly * std::exp(mip * t.pole);
    }
    return total;
}

} // namespace detail

/// psi~(p): zero for p < 0, the residue sum for p > 0. At p = 0 the
/// principal value psi~(0+)/2 when n - m = 1, the continuous limit otherwise.
inline cplx eval_spectrum(const MomentumSpectrumLine& sp, double p) noexcept
{
    if (p < 0.0)
        return cplx{0.0};
    const cplx v = detail::positive_spectrum(sp, p);
    if (p == 0.0 && sp.order_gap == 1)
        return 0.5 * v;
    return v;
}

/// Phase gradient d/dx arg psi as a sum of Lorentzians over zeros and poles.
inline double local_wavenumber(const LineWaveFunction& wf, double x)
{
    if (detail::real_zero_at(wf.spec(), x))
        throw SingularPoint("local wave number undefined at a real zero of psi");
    return detail::lorentzian_wavenumber(wf.spec(), x);
}

/// j = |psi|^2 k, defined as 0 at real zeros of psi.
inline double probability_current(const LineWaveFunction& wf, double x)
{
    if (detail::real_zero_at(wf.spec(), x))
        return 0.0;
    return std::norm(wf(x)) * detail::lorentzian_wavenumber(wf.spec(), x);
}

namespace detail {

// Numerator of the Lorentzian sum over its common (positive) denominator:
// sign(P(x)) == sign(k(x)) for every real x.
inline Poly wavenumber_numerator(const RationalSpec& spec)
{
    std::vector<double> weights;
    std::vector<Poly> quads;
    auto add = [&](const Root& r, double sign) {
        const cplx c = r.position;
        weights.push_back(sign * r.multiplicity * c.imag());
        quads.push_back(Poly{cplx{std::norm(c)}, cplx{-2.0 * c.real()}, cplx{1.0}});
    };
    for (const auto& a : spec.zeros())
        if (!is_real_zero(a))
            add(a, 1.0);
    for (const auto& b : spec.poles())
        add(b, -1.0);

    const std::size_t n = quads.size();
    std::vector<Poly> prefix(n + 1, Poly::constant(1.0));
    std::vector<Poly> suffix(n + 1, Poly::constant(1.0));
    for (std::size_t i = 0; i < n; ++i)
        prefix[i + 1] = prefix[i] * quads[i];
    for (std::size_t i = n; i-- > 0;)
        suffix[i] = suffix[i + 1] * quads[i];
    Poly total;
    for (std::size_t j = 0; j < n; ++j)
        total = total + cplx{weights[j]} * (prefix[j] * suffix[j + 1]);
    return total;
}

inline BackflowReport assemble_line_report(const RationalSpec& spec, const Poly& numer)
{
    auto k = [&](double x) { return lorentzian_wavenumber(spec, x); };

    std::vector<RealRoot> roots;
    if (numer.degree() >= 1)
        roots = real_roots(numer);

    BackflowReport rep;
    const double inf = std::numeric_limits<double>::infinity();
    if (roots.empty()) {
        if (k(0.0) < 0.0)
            rep.intervals.push_back({-inf, inf, false});
    } else {
        const std::size_t r = roots.size();
        // sign on segment s, s = 0..r, segment s is (roots[s-1], roots[s])
        std::vector<int> sign(r + 1);
        auto probe = [&](std::size_t s) {
            double x;
            if (s == 0)
                x = roots[0].value - (1.0 + std::abs(roots[0].value));
            else if (s == r)
                x = roots[r - 1].value + (1.0 + std::abs(roots[r - 1].value));
            else
                x = 0.5 * (roots[s - 1].value + roots[s].value);
            return k(x) < 0.0 ? -1 : 1;
        };
        for (std::size_t s = 0; s <= r; ++s)
            sign[s] = probe(s);
        for (std::size_t s = 0; s <= r; ++s) {
            if (s > 0 && sign[s - 1] > 0 && sign[s] > 0)
                rep.intervals.push_back({roots[s - 1].value, roots[s - 1].value, true});
            if (sign[s] < 0) {
                const double lo = s == 0 ? -inf : roots[s - 1].value;
                const double hi = s == r ? inf : roots[s].value;
                rep.intervals.push_back({lo, hi, false});
            }
        }
    }

    std::vector<double> anchors = root_landmarks(spec);
    for (const auto& iv : rep.intervals) {
        if (std::isfinite(iv.lo) && std::isfinite(iv.hi))
            anchors.push_back(0.5 * (iv.lo + iv.hi));
    }
    const auto xs = line_samples(4001, anchors);
    const auto kmin = minimize_sampled(k, xs);
    const auto jmin = minimize_sampled(
        [&](double x) { return std::norm(spec(cplx{x, 0.0})) * k(x); }, xs);
    rep.min_wavenumber = kmin.value;
    rep.argmin_wavenumber = kmin.x;
    rep.min_current = jmin.value;
    rep.argmin_current = jmin.x;
    return rep;
}

} // namespace detail

/// Maximal intervals with k(x) < 0, found exactly from the real roots of the
/// cleared Lorentzian numerator, plus the extremal wave number and current.
inline BackflowReport backflow_intervals(const LineWaveFunction& wf)
{
    auto rep = detail::assemble_line_report(wf.spec(), detail::wavenumber_numerator(wf.spec()));
    const double n2 = wf.norm_constant() * wf.norm_constant();
    rep.min_current *= n2;
    return rep;
}

} // namespace backflow
