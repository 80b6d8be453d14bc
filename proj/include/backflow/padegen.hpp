#pragma once

// Constrained Pade design: the denominator poles are fixed by the caller in
// the lower half-plane and only the numerator is solved for, so that
// A_m(x)/B_n(x) reproduces the first m+1 Taylor coefficients of a target
// profile p(x) about x = 0.

#include "backflow/contwave.hpp"
#include "backflow/error.hpp"
#include "backflow/extremum.hpp"
#include "backflow/polyring.hpp"
#include "backflow/rational.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace backflow {

/// Target profile: Taylor coefficients about 0, plus an optional exact
/// evaluator. Without one, the supplied Taylor polynomial is evaluated.
struct Profile {
    std::vector<cplx> taylor;
    std::function<cplx(double)> exact;

    cplx operator()(double x) const
    {
        if (exact)
            return exact(x);
        return Poly(taylor)(cplx{x, 0.0});
    }

    /// exp(i kappa x) with `terms` Taylor coefficients (i kappa)^k / k!.
    static Profile exponential(double kappa, std::size_t terms)
    {
        Profile p;
        cplx c{1.0};
        const cplx ik{0.0, kappa};
        for (std::size_t k = 0; k < terms; ++k) {
            p.taylor.push_back(c);
            c *= ik / static_cast<double>(k + 1);
        }
        p.exact = [kappa](double x) { return std::polar(1.0, kappa * x); };
        return p;
    }

    static Profile from_taylor(std::vector<cplx> coeffs) { return Profile{std::move(coeffs), {}}; }
};

struct PadeProblem {
    Profile profile;
    int numerator_degree = 0;
    std::vector<Root> poles;
    double half_width = 1.0;
};

struct DesignReport {
    LineWaveFunction wavefunction;
    Poly numerator;                    // alpha_0..alpha_m
    double max_error_on_interval = 0.0; // sup |psi - N p| / N on (-x0, x0)
    double amplitude_ratio = 1.0;       // max|psi| on R over max|psi| on (-x0, x0)
    double peak_location = 0.0;
};

inline void validate_pade_problem(const PadeProblem& pb)
{
    int n = 0;
    for (const auto& b : pb.poles) {
        if (b.multiplicity < 1)
            throw SpecViolation("pole multiplicity must be >= 1");
        if (!(b.position.imag() < 0.0))
            throw SpecViolation("every denominator pole must satisfy Im(b) < 0");
        n += b.multiplicity;
    }
    if (pb.numerator_degree < 0)
        throw SpecViolation("numerator degree m must be >= 0");
    if (pb.numerator_degree >= n)
        throw SpecViolation("square integrability requires m < total pole multiplicity");
    if (pb.profile.taylor.size() < static_cast<std::size_t>(pb.numerator_degree) + 1)
        throw SpecViolation("at least m+1 profile Taylor coefficients are required");
    if (!(pb.half_width > 0.0))
        throw SpecViolation("design half-width x0 must be positive");
}

/// alpha_k = sum_{l<=k} beta_l p_{k-l}, k = 0..m, with beta the power-form
/// coefficients of prod (x - b_l)^{n_l}.
inline Poly pade_numerator(const PadeProblem& pb)
{
    validate_pade_problem(pb);
    const Poly beta = poly_from_roots(pb.poles);
    const auto m = static_cast<std::size_t>(pb.numerator_degree);
    std::vector<cplx> alpha(m + 1, cplx{0.0});
    for (std::size_t k = 0; k <= m; ++k)
        for (std::size_t l = 0; l <= k; ++l)
            alpha[k] += beta.coeff(l) * pb.profile.taylor[k - l];
    return Poly(std::move(alpha));
}

namespace detail {

// Factors alpha into gain * prod (x - a_j) and rejects the factorization if
// re-expansion misses the coefficients by more than 1e-8 relative.
inline RationalSpec factor_design(const Poly& alpha, const std::vector<Root>& poles)
{
    std::vector<Root> zeros;
    if (alpha.degree() >= 1) {
        for (const auto& z : complex_roots(alpha))
            zeros.push_back({z, 1});
    }
    const cplx gain = alpha.leading();
    const Poly rebuilt = gain * poly_from_roots(zeros);
    double worst = 0.0;
    for (int k = 0; k <= alpha.degree(); ++k)
        worst = std::max(worst, std::abs(rebuilt.coeff(static_cast<std::size_t>(k))
                                         - alpha.coeff(static_cast<std::size_t>(k))));
    if (worst > 1e-8 * alpha.max_abs_coeff())
        throw RootExtractionFailure("numerator factorization residual above 1e-8");
    return RationalSpec::make(std::move(zeros), poles, gain);
}

} // namespace detail

inline DesignReport design_wavefunction(const PadeProblem& pb)
{
    const Poly alpha = pade_numerator(pb);
    if (alpha.is_zero())
        throw SpecViolation("designed numerator vanishes identically");
    auto wf = make_line_wavefunction(detail::factor_design(alpha, pb.poles));
    const double N = wf.norm_constant();
    const double x0 = pb.half_width;

    double err = 0.0;
    std::vector<double> inside;
    constexpr int kGrid = 2001;
    for (int i = 0; i < kGrid; ++i) {
        const double x = -x0 + 2.0 * x0 * i / (kGrid - 1);
        inside.push_back(x);
        err = std::max(err, std::abs(wf(x) / N - pb.profile(x)));
    }

    auto neg_abs = [&](double x) { return -std::abs(wf(x)); };
    const auto in_peak = detail::minimize_sampled(neg_abs, inside);

    double bmax = 0.0;
    for (const auto& b : pb.poles)
        bmax = std::max(bmax, std::abs(b.position));
    const double window = 20.0 * std::max(bmax, x0);
    constexpr int kGlobal = 40001;
    std::vector<double> global;
    global.reserve(kGlobal);
    for (int i = 0; i < kGlobal; ++i)
        global.push_back(-window + 2.0 * window * i / (kGlobal - 1));
    auto out_peak = detail::minimize_sampled(neg_abs, global);
    if (out_peak.value > in_peak.value)
        out_peak = in_peak;

    DesignReport rep{std::move(wf), alpha, err, out_peak.value / in_peak.value, out_peak.x};
    return rep;
}

/// Amplitude ratio for the exp(-ix) profile and a single pole -ib of
/// multiplicity m+1, for each b.
inline std::vector<std::pair<double, double>> amplitude_scaling_probe(int m, std::span<const double> b_values,
                                                                      double x0)
{
    std::vector<std::pair<double, double>> out;
    for (double b : b_values) {
        if (!(b > x0))
            throw SpecViolation("scaling probe requires b > x0");
        PadeProblem pb{Profile::exponential(-1.0, static_cast<std::size_t>(m) + 1), m,
                       {Root{cplx{0.0, -b}, m + 1}}, x0};
        out.emplace_back(b, design_wavefunction(pb).amplitude_ratio);
    }
    return out;
}

} // namespace backflow
