#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace backflow {

enum class ErrorKind {
    SpecViolation,
    QuadratureFailure,
    SingularPoint,
    ZeroLeadingDenominator,
    DegreeZero,
    TruncationFailure,
    RootExtractionFailure,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::SpecViolation: return "SpecViolation";
    case ErrorKind::QuadratureFailure: return "QuadratureFailure";
    case ErrorKind::SingularPoint: return "SingularPoint";
    case ErrorKind::ZeroLeadingDenominator: return "ZeroLeadingDenominator";
    case ErrorKind::DegreeZero: return "DegreeZero";
    case ErrorKind::TruncationFailure: return "TruncationFailure";
    case ErrorKind::RootExtractionFailure: return "RootExtractionFailure";
    }
    return "Unknown";
}

/// Base of every exception thrown by the library. `kind()` identifies the
/// failure class; the message names the violated condition.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind)
    {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
public:
    explicit KindedError(const std::string& what) : Error(K, what) {}
};

using SpecViolation = KindedError<ErrorKind::SpecViolation>;
using QuadratureFailure = KindedError<ErrorKind::QuadratureFailure>;
using SingularPoint = KindedError<ErrorKind::SingularPoint>;
using ZeroLeadingDenominator = KindedError<ErrorKind::ZeroLeadingDenominator>;
using DegreeZero = KindedError<ErrorKind::DegreeZero>;
using TruncationFailure = KindedError<ErrorKind::TruncationFailure>;
using RootExtractionFailure = KindedError<ErrorKind::RootExtractionFailure>;

/// Numerical failures (as opposed to invalid input).
inline bool is_numerical(ErrorKind kind) noexcept
{
    return kind != ErrorKind::SpecViolation;
}

} // namespace backflow
