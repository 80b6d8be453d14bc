#pragma once

// Complex polynomials and truncated power series.
//
// Poly stores coefficients in ascending powers. Trailing coefficients whose
// magnitude is below kStripTolerance times the largest coefficient are
// dropped, so degree() reflects genuine degree rather than round-off.
// Series holds the first order() Taylor coefficients about a center; the
// j-th coefficient is f^{(j)}(center)/j!.

#include "backflow/error.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace backflow {

using cplx = std::complex<double>;

inline constexpr double kStripTolerance = 1e-14;

/// A complex location with a positive integer multiplicity.
struct Root {
    cplx position{};
    int multiplicity = 1;

    friend bool operator==(const Root&, const Root&) = default;
};

class Poly {
public:
    Poly() : coeffs_{cplx{0.0}} {}

    explicit Poly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) { strip(); }

    Poly(std::initializer_list<cplx> coeffs) : coeffs_(coeffs) { strip(); }

    static Poly constant(cplx c) { return Poly(std::vector<cplx>{c}); }

    std::span<const cplx> coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == cplx{0.0}; }
    cplx leading() const noexcept { return coeffs_.back(); }

    cplx coeff(std::size_t k) const noexcept
    {
        return k < coeffs_.size() ? coeffs_[k] : cplx{0.0};
    }

    double max_abs_coeff() const noexcept
    {
        double m = 0.0;
        for (const auto& c : coeffs_)
            m = std::max(m, std::abs(c));
        return m;
    }

    /// Horner evaluation.
    cplx operator()(cplx z) const noexcept
    {
        cplx acc{0.0};
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * z + *it;
        return acc;
    }

    /// Sum of |c_k| |z|^k, the natural scale for rounding errors in operator().
    double eval_scale(cplx z) const noexcept
    {
        const double r = std::abs(z);
        double acc = 0.0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * r + std::abs(*it);
        return acc;
    }

    Poly derivative() const
    {
        if (coeffs_.size() <= 1)
            return Poly{};
        std::vector<cplx> d(coeffs_.size() - 1);
        for (std::size_t k = 1; k < coeffs_.size(); ++k)
            d[k - 1] = coeffs_[k] * static_cast<double>(k);
        return Poly(std::move(d));
    }

    friend Poly operator*(const Poly& a, const Poly& b)
    {
        if (a.is_zero() || b.is_zero())
            return Poly{};
        std::vector<cplx> out(a.coeffs_.size() + b.coeffs_.size() - 1, cplx{0.0});
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return Poly(std::move(out));
    }

    friend Poly operator*(cplx s, const Poly& a)
    {
        std::vector<cplx> out(a.coeffs_.begin(), a.coeffs_.end());
        for (auto& c : out)
            c *= s;
        return Poly(std::move(out));
    }

    friend Poly operator+(const Poly& a, const Poly& b)
    {
        std::vector<cplx> out(std::max(a.coeffs_.size(), b.coeffs_.size()), cplx{0.0});
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(out));
    }

    friend Poly operator-(const Poly& a, const Poly& b) { return a + cplx{-1.0} * b; }

private:
    void strip()
    {
        if (coeffs_.empty()) {
            coeffs_.push_back(cplx{0.0});
            return;
        }
        const double m = max_abs_coeff();
        if (m == 0.0) {
            coeffs_.assign(1, cplx{0.0});
            return;
        }
        while (coeffs_.size() > 1 && std::abs(coeffs_.back()) <= kStripTolerance * m)
            coeffs_.pop_back();
    }

    std::vector<cplx> coeffs_;
};

/// Monic product of (z - a)^m over the given roots.
inline Poly poly_from_roots(std::span<const Root> roots)
{
    std::vector<cplx> c{cplx{1.0}};
    for (const auto& r : roots) {
        if (r.multiplicity < 1)
            throw SpecViolation("root multiplicity must be >= 1");
        for (int k = 0; k < r.multiplicity; ++k) {
            c.push_back(cplx{0.0});
            for (std::size_t j = c.size() - 1; j > 0; --j)
                c[j] = c[j - 1] - r.position * c[j];
            c[0] = -r.position * c[0];
        }
    }
    return Poly(std::move(c));
}

inline cplx poly_eval(const Poly& p, cplx z) noexcept { return p(z); }

struct Series {
    std::vector<cplx> coeffs;
    cplx center{};

    std::size_t order() const noexcept { return coeffs.size(); }

    cplx operator[](std::size_t j) const noexcept
    {
        return j < coeffs.size() ? coeffs[j] : cplx{0.0};
    }

    /// Taylor coefficients of p about `center`, truncated to `order` terms.
    static Series from_poly(const Poly& p, cplx center, std::size_t order)
    {
        std::vector<cplx> c(p.coeffs().begin(), p.coeffs().end());
        const std::size_t n = c.size();
        // repeated synthetic division by (z - center)
        for (std::size_t i = 0; i + 1 < n; ++i)
            for (std::size_t j = n - 1; j-- > i;)
                c[j] += center * c[j + 1];
        c.resize(order, cplx{0.0});
        return Series{std::move(c), center};
    }
};

namespace detail {

inline void require_same_center(const Series& a, const Series& b)
{
    if (std::abs(a.center - b.center) > 1e-14 * (1.0 + std::abs(a.center)))
        throw SpecViolation("series expanded about different centers");
}

} // namespace detail

inline Series series_product(const Series& a, const Series& b, std::size_t order)
{
    detail::require_same_center(a, b);
    std::vector<cplx> out(order, cplx{0.0});
    for (std::size_t k = 0; k < order; ++k)
        for (std::size_t i = 0; i <= k; ++i)
            out[k] += a[i] * b[k - i];
    return Series{std::move(out), a.center};
}

/// First `order` Taylor coefficients of num/den about their shared center.
inline Series series_quotient(const Series& num, const Series& den, std::size_t order)
{
    detail::require_same_center(num, den);
    if (order < 1)
        throw SpecViolation("series order must be >= 1");
    double dmax = 0.0;
    for (const auto& c : den.coeffs)
        dmax = std::max(dmax, std::abs(c));
    if (den.order() == 0 || dmax == 0.0 || std::abs(den[0]) < 1e-14 * dmax)
        throw ZeroLeadingDenominator("denominator vanishes at the expansion center");

    const cplx d0 = den[0];
    const std::size_t dlen = den.order();
    std::vector<cplx> q(order, cplx{0.0});
    for (std::size_t j = 0; j < order; ++j) {
        cplx acc = num[j];
        const std::size_t imax = std::min(j, dlen - 1);
        for (std::size_t i = 1; i <= imax; ++i)
            acc -= den.coeffs[i] * q[j - i];
        q[j] = acc / d0;
    }
    return Series{std::move(q), num.center};
}

struct RealRoot {
    double value = 0.0;
    int multiplicity = 1;
};

namespace detail {

// Radius s such that the roots of p(s*y) are O(1); keeps the companion
// matrix entries bounded by 1 in magnitude.
inline double root_scale(std::span<const cplx> c)
{
    const std::size_t n = c.size() - 1;
    const double lead = std::abs(c[n]);
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = std::abs(c[i]);
        if (a > 0.0)
            s = std::max(s, std::pow(a / lead, 1.0 / static_cast<double>(n - i)));
    }
    return s > 0.0 ? s : 1.0;
}

inline std::vector<cplx> companion_eigenvalues(std::span<const cplx> c)
{
    const std::size_t n = c.size() - 1;
    const double s = root_scale(c);
    const cplx lead = c[n];
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n),
                                                   static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double sp = std::pow(s, static_cast<double>(n - i));
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / (lead * sp);
        if (i > 0)
            comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(comp, false);
    if (solver.info() != Eigen::Success)
        throw RootExtractionFailure("companion eigenvalue iteration did not converge");
    std::vector<cplx> out;
    out.reserve(n);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        out.push_back(solver.eigenvalues()(i) * s);
    return out;
}

inline std::vector<cplx> real_companion_eigenvalues(std::span<const double> c)
{
    const std::size_t n = c.size() - 1;
    std::vector<cplx> cc(c.begin(), c.end());
    const double s = root_scale(cc);
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
        const double sp = std::pow(s, static_cast<double>(n - i));
        comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(n - 1)) = -c[i] / (c[n] * sp);
        if (i > 0)
            comp(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    Eigen::EigenSolver<Eigen::MatrixXd> solver(comp, false);
    if (solver.info() != Eigen::Success)
        throw RootExtractionFailure("companion eigenvalue iteration did not converge");
    std::vector<cplx> out;
    out.reserve(n);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i)
        out.push_back(solver.eigenvalues()(i) * s);
    return out;
}

struct RealPoly {
    std::vector<double> c;

    double operator()(double x) const noexcept
    {
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    double scale(double x) const noexcept
    {
        const double r = std::abs(x);
        double acc = 0.0;
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * r + std::abs(*it);
        return acc;
    }

    RealPoly derivative() const
    {
        RealPoly d;
        for (std::size_t k = 1; k < c.size(); ++k)
            d.c.push_back(c[k] * static_cast<double>(k));
        if (d.c.empty())
            d.c.push_back(0.0);
        return d;
    }
};

inline int sign_of(double v) noexcept { return (v > 0.0) - (v < 0.0); }

inline double bisect(const RealPoly& q, double lo, double hi)
{
    double flo = q(lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        const double fm = q(mid);
        if (fm == 0.0)
            return mid;
        if (sign_of(fm) == sign_of(flo)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return std::abs(q(lo)) <= std::abs(q(hi)) ? lo : hi;
}

// Refines a seed into a real root of q, or returns nullopt when the seed does
// not lead to a point with residual below 1e-12 of the evaluation scale.
inline std::optional<double> refine_real_root(const RealPoly& q, double seed)
{
    if (q(seed) == 0.0)
        return seed;
    const double unit = 1.0 + std::abs(seed);
    double found = seed;
    bool bracketed = false;
    for (double h = 1e-13 * unit; h <= 1e-2 * unit; h *= 4.0) {
        const double a = seed - h;
        const double b = seed + h;
        const int sa = sign_of(q(a));
        const int sb = sign_of(q(b));
        if (sa == 0) { found = a; bracketed = true; break; }
        if (sb == 0) { found = b; bracketed = true; break; }
        if (sa != sb) {
            found = bisect(q, a, b);
            bracketed = true;
            break;
        }
    }
    if (!bracketed) {
        // even multiplicity: the root is a simple root of q'
        const RealPoly d1 = q.derivative();
        const RealPoly d2 = d1.derivative();
        double x = seed;
        for (int it = 0; it < 60; ++it) {
            const double g = d1(x);
            const double gp = d2(x);
            if (g == 0.0 || gp == 0.0)
                break;
            const double step = g / gp;
            x -= step;
            if (std::abs(step) <= 1e-17 * (1.0 + std::abs(x)))
                break;
        }
        found = x;
    }
    if (!std::isfinite(found) || std::abs(q(found)) > 1e-12 * q.scale(found))
        return std::nullopt;
    return found;
}

inline int real_multiplicity(const RealPoly& q, double x)
{
    const int deg = static_cast<int>(q.c.size()) - 1;
    int mult = 1;
    RealPoly d = q.derivative();
    for (int k = 1; k < deg; ++k) {
        const double tol = (k == 1) ? 1e-6 : 1e-4;
        if (std::abs(d(x)) > tol * d.scale(x))
            break;
        ++mult;
        d = d.derivative();
    }
    return mult;
}

} // namespace detail

/// All real roots of a real-coefficient polynomial in ascending order, with
/// multiplicities. Seeds come from companion-matrix eigenvalues; each seed is
/// refined by bisection (odd multiplicity) or Newton on p' (even).
inline std::vector<RealRoot> real_roots(const Poly& p)
{
    const double cmax = p.max_abs_coeff();
    for (const auto& c : p.coeffs())
        if (std::abs(c.imag()) >= 1e-12 * cmax && std::abs(c.imag()) > 0.0)
            throw SpecViolation("real_roots requires real coefficients");
    if (p.degree() < 1)
        throw DegreeZero("constant polynomial has no roots to find");

    std::vector<double> rc;
    for (const auto& c : p.coeffs())
        rc.push_back(c.real());

    std::vector<RealRoot> roots;
    std::size_t z0 = 0;
    while (z0 < rc.size() && rc[z0] == 0.0)
        ++z0;
    if (z0 > 0)
        roots.push_back({0.0, static_cast<int>(z0)});

    detail::RealPoly q{std::vector<double>(rc.begin() + static_cast<std::ptrdiff_t>(z0), rc.end())};
    if (q.c.size() >= 2) {
        std::vector<double> seeds;
        for (const auto& lam : detail::real_companion_eigenvalues(q.c))
            if (std::abs(lam.imag()) <= 1e-3 * (1.0 + std::abs(lam)))
                seeds.push_back(lam.real());
        for (double s : seeds) {
            if (auto r = detail::refine_real_root(q, s))
                roots.push_back({*r, detail::real_multiplicity(q, *r)});
        }
    }

    std::sort(roots.begin(), roots.end(),
              [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
    std::vector<RealRoot> merged;
    for (const auto& r : roots) {
        if (!merged.empty()) {
            auto& last = merged.back();
            const int m = std::max(last.multiplicity, r.multiplicity);
            const double radius = 10.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / m)
                                  * (1.0 + std::abs(r.value));
            if (std::abs(r.value - last.value) <= radius) {
                if (r.multiplicity > last.multiplicity)
                    last = r;
                continue;
            }
        }
        merged.push_back(r);
    }
    return merged;
}

/// All complex roots (with repetition), companion eigenvalues polished by Newton.
inline std::vector<cplx> complex_roots(const Poly& p)
{
    if (p.degree() < 1)
        throw DegreeZero("constant polynomial has no roots to find");
    const auto c = p.coeffs();
    std::size_t z0 = 0;
    while (z0 < c.size() && c[z0] == cplx{0.0})
        ++z0;
    std::vector<cplx> roots(z0, cplx{0.0});
    if (c.size() - z0 < 2)
        return roots;

    const Poly q(std::vector<cplx>(c.begin() + static_cast<std::ptrdiff_t>(z0), c.end()));
    const Poly dq = q.derivative();
    for (cplx z : detail::companion_eigenvalues(q.coeffs())) {
        double res = std::abs(q(z));
        for (int it = 0; it < 8 && res > 0.0; ++it) {
            const cplx d = dq(z);
            if (d == cplx{0.0})
                break;
            const cplx zn = z - q(z) / d;
            const double rn = std::abs(q(zn));
            if (!(rn < res))
                break;
            z = zn;
            res = rn;
        }
        roots.push_back(z);
    }
    return roots;
}

} // namespace backflow
