#pragma once

#include "backflow/error.hpp"
#include "backflow/polyring.hpp"

#include <cmath>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace backflow {

inline constexpr double kRootMergeTolerance = 1e-9;

/// f(z) = gain * prod (z - a_l)^{m_l} / prod (z - b_l)^{n_l}.
///
/// Construction merges zeros (and poles) closer than kRootMergeTolerance by
/// summing multiplicities and rejects any zero within that distance of a
/// pole. Geometry-specific constraints (half-plane, unit circle) are checked
/// by the line and ring constructors.
class RationalSpec {
public:
    RationalSpec() = default;

    static RationalSpec make(std::vector<Root> zeros, std::vector<Root> poles, cplx gain = 1.0)
    {
        if (gain == cplx{0.0} || !std::isfinite(gain.real()) || !std::isfinite(gain.imag()))
            throw SpecViolation("gain must be finite and nonzero");
        RationalSpec s;
        s.zeros_ = merge(std::move(zeros), "zero");
        s.poles_ = merge(std::move(poles), "pole");
        s.gain_ = gain;
        for (const auto& z : s.zeros_)
            for (const auto& p : s.poles_)
                if (std::abs(z.position - p.position) < kRootMergeTolerance)
                    throw SpecViolation("zero and pole coincide (common factor)");
        return s;
    }

    std::span<const Root> zeros() const noexcept { return zeros_; }
    std::span<const Root> poles() const noexcept { return poles_; }
    cplx gain() const noexcept { return gain_; }

    int numerator_degree() const noexcept { return total(zeros_); }
    int denominator_degree() const noexcept { return total(poles_); }

    Poly numerator() const { return gain_ * poly_from_roots(zeros_); }
    Poly denominator() const { return poly_from_roots(poles_); }

    /// Evaluates f in factored form, interleaving numerator and denominator
    /// factors so that intermediate magnitudes stay moderate for large |z|.
    cplx operator()(cplx z) const noexcept
    {
        cplx acc = gain_;
        std::size_t iz = 0, ip = 0;
        int rz = zeros_.empty() ? 0 : zeros_[0].multiplicity;
        int rp = poles_.empty() ? 0 : poles_[0].multiplicity;
        while (iz < zeros_.size() || ip < poles_.size()) {
            if (iz < zeros_.size()) {
                acc *= z - zeros_[iz].position;
                if (--rz == 0 && ++iz < zeros_.size())
                    rz = zeros_[iz].multiplicity;
            }
            if (ip < poles_.size()) {
                acc /= z - poles_[ip].position;
                if (--rp == 0 && ++ip < poles_.size())
                    rp = poles_[ip].multiplicity;
            }
        }
        return acc;
    }

    friend bool operator==(const RationalSpec&, const RationalSpec&) = default;

private:
    static int total(const std::vector<Root>& roots) noexcept
    {
        int n = 0;
        for (const auto& r : roots)
            n += r.multiplicity;
        return n;
    }

    static std::vector<Root> merge(std::vector<Root> in, const char* what)
    {
        std::vector<Root> out;
        for (const auto& r : in) {
            if (r.multiplicity < 1)
                throw SpecViolation(std::string(what) + " multiplicity must be >= 1");
            if (!std::isfinite(r.position.real()) || !std::isfinite(r.position.imag()))
                throw SpecViolation(std::string(what) + " position must be finite");
            bool merged = false;
            for (auto& o : out) {
                if (std::abs(o.position - r.position) < kRootMergeTolerance) {
                    o.multiplicity += r.multiplicity;
                    merged = true;
                    break;
                }
            }
            if (!merged)
                out.push_back(r);
        }
        return out;
    }

    std::vector<Root> zeros_;
    std::vector<Root> poles_;
    cplx gain_{1.0};
};

/// One reported region of negative local wave number. Half-infinite ends are
/// encoded as +-infinity. `degenerate` marks a tangency (zero-width) point.
struct BackflowInterval {
    double lo = 0.0;
    double hi = 0.0;
    bool degenerate = false;

    double width() const noexcept { return hi - lo; }
};

struct BackflowReport {
    std::vector<BackflowInterval> intervals;
    double min_wavenumber = 0.0;
    double argmin_wavenumber = 0.0;
    double min_current = 0.0;
    double argmin_current = 0.0;

    bool empty() const noexcept { return intervals.empty(); }

    bool has_degenerate() const noexcept
    {
        for (const auto& iv : intervals)
            if (iv.degenerate)
                return true;
        return false;
    }
};

} // namespace backflow
