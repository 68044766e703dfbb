#pragma once

#include <stdexcept>
#include <string>

namespace lncat {

/// Base class for all domain errors raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An observation on the original scale was zero or negative.
struct NonPositiveObservation : Error {
    using Error::Error;
};

/// A group has fewer than two observations.
struct TooFewObservations : Error {
    using Error::Error;
};

/// Fewer than two groups were supplied to a k-sample test.
struct TooFewGroups : Error {
    using Error::Error;
};

/// A group's log-scale sample variance is zero; the variance estimate and
/// the test statistic are undefined.
struct DegenerateSample : Error {
    using Error::Error;
};

/// A variance parameter was zero or negative.
struct NonPositiveVariance : Error {
    using Error::Error;
};

/// The profiled variance root sits on the parameter-space boundary.
struct DegenerateProfile : Error {
    using Error::Error;
};

/// An iterative routine hit its iteration cap before reaching tolerance.
struct NoConvergence : Error {
    using Error::Error;
};

/// A nominal level was outside (0, 1), or too extreme for the replicate count.
struct AlphaOutOfRange : Error {
    using Error::Error;
};

/// Replicate count below the enforced minimum of 100.
struct MTooSmall : Error {
    using Error::Error;
};

/// Generic configuration/validation failure (bad lengths, empty method set, ...).
struct InvalidInput : Error {
    using Error::Error;
};

/// Internal cross-check failed; indicates an optimizer or arithmetic fault,
/// not a user error.
struct InternalConsistencyError : Error {
    using Error::Error;
};

/// More than 1% of a study's experiments failed.
struct TooManyFailures : Error {
    using Error::Error;
};

}  // namespace lncat
