#pragma once

// Globally adaptive Gauss-Kronrod (7/15) integration on a finite interval.
// The interval list is refined by bisecting the sub-interval with the
// largest error estimate until the summed estimate meets the tolerance.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <queue>
#include <span>
#include <vector>

namespace backflow::quad {

template <class T>
struct Result {
    T value{};
    double error = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

inline constexpr double xgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};

inline constexpr double wgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};

// Gauss weights for xgk[1], xgk[3], xgk[5], xgk[7].
inline constexpr double wg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

template <class T>
struct Panel {
    double a, b;
    T value;
    double error;
    friend bool operator<(const Panel& l, const Panel& r) { return l.error < r.error; }
};

template <class T, class F>
Panel<T> gk15(F& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const T fc = f(c);
    T kron = fc * wgk[7];
    T gauss = fc * wg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = h * xgk[j];
        const T s = f(c - dx) + f(c + dx);
        kron += s * wgk[j];
        if (j % 2 == 1)
            gauss += s * wg[j / 2];
    }
    kron *= h;
    gauss *= h;
    return {a, b, kron, std::abs(kron - gauss)};
}

} // namespace detail

/// Integrates f over [breaks.front(), breaks.back()], starting with one panel
/// per consecutive pair of break points.
template <class T, class F>
Result<T> integrate(F&& f, std::span<const double> breaks, double rel_tol, double abs_tol = 0.0,
                    std::size_t max_panels = 20000)
{
    std::priority_queue<detail::Panel<T>> heap;
    Result<T> out;
    T total{};
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i]))
            continue;
        auto p = detail::gk15<T>(f, breaks[i], breaks[i + 1]);
        out.evaluations += 15;
        total += p.value;
        err += p.error;
        heap.push(p);
    }
    while (!heap.empty()) {
        if (err <= std::max(abs_tol, rel_tol * std::abs(total))) {
            out.converged = true;
            break;
        }
        if (heap.size() >= max_panels)
            break;
        const auto worst = heap.top();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            break;
        heap.pop();
        auto left = detail::gk15<T>(f, worst.a, mid);
        auto right = detail::gk15<T>(f, mid, worst.b);
        out.evaluations += 30;
        total += left.value + right.value - worst.value;
        err += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
    // re-sum to shed accumulated cancellation error in the running totals
    T sum{};
    double esum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        esum += heap.top().error;
        heap.pop();
    }
    out.value = sum;
    out.error = esum;
    if (!out.converged)
        out.converged = esum <= std::max(abs_tol, rel_tol * std::abs(sum));
    return out;
}

} // namespace backflow::quad
