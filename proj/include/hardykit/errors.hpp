#pragma once

#include <stdexcept>
#include <string>

namespace hardykit {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// -- domain / construction errors --

struct PointOutsideDomain : Error {
    using Error::Error;
};
struct SingularPoint : Error {
    using Error::Error;
};
struct NonpositiveBase : Error {
    using Error::Error;
};
struct ExponentOutOfRange : Error {
    using Error::Error;
};
struct ConfigInvalid : Error {
    using Error::Error;
};

// -- quadrature errors --

/// Requested tolerance could not be met; carries the best estimate so far.
struct ToleranceNotReached : Error {
    double best_estimate;
    double error_bound;
    ToleranceNotReached(const std::string& msg, double best, double bound)
        : Error(msg), best_estimate(best), error_bound(bound) {}
};

/// The tail integral is infinite at every interior point.
struct DivergentTail : Error {
    using Error::Error;
};

/// A cached cumulative value violates monotonicity against its neighbors.
struct MonotonicityViolation : Error {
    using Error::Error;
};

// -- condition-evaluation errors --

struct SideConditionViolated : Error {
    using Error::Error;
};
struct MissingAuxFunction : Error {
    using Error::Error;
};
struct NonConvergedSup : Error {
    using Error::Error;
};

// -- estimator errors --

struct ZeroTestFunction : Error {
    using Error::Error;
};
struct DivergentNorm : Error {
    using Error::Error;
};
struct AllSamplesDegenerate : Error {
    using Error::Error;
};

// -- geometric-mean errors --

struct LogNotIntegrable : Error {
    using Error::Error;
};

}  // namespace hardykit
