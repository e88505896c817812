#pragma once

#include <stdexcept>
#include <string>

namespace ratext {

/// Argument outside the mathematical domain of a function (x <= 0 for log_gamma, x outside the open interval, ...).
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Model or family parameters violate a validity condition. The message names the condition.
struct ParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A normalization or rescale factor vanishes for the requested parameters.
struct SingularParameterError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation not defined for the requested family or index.
struct UnsupportedError : std::logic_error {
    using std::logic_error::logic_error;
};

/// Malformed request (bad tag, negative level, ...).
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: no convergence, underflow, borderline classification.
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ratext
