#ifndef JSCC_ERRORS_HPP
#define JSCC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace jscc {

/// Parameter outside its documented domain (negative power, rho >= 1, ...).
struct InvalidParams : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A requested dimension name is not present in the joint distribution.
struct UnknownLabel : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Observation covariance block is numerically singular.
struct SingularObservation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An iterative solver exhausted its budget without meeting tolerance.
struct NoConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// rho = 0 makes a closed-form critical point undefined.
struct DegenerateCorrelation : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation is defined only for a subset of coding schemes.
struct UnsupportedScheme : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Bad CLI / sweep configuration.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Output file could not be opened or written.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace jscc

#endif
