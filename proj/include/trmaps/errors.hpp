#pragma once

#include <stdexcept>
#include <string>

namespace trmaps {

/// Operands built over different weight configurations, or an invalid configuration.
struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Division by a series whose constant term is not invertible.
struct NonUnitError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Square root requested outside the constant-term-one branch.
struct UnsupportedBranchError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A local expansion was asked for a coefficient beyond its known precision.
struct OrderDeficitError : std::logic_error {
    using std::logic_error::logic_error;
};

/// A caller asked for something outside an operation's domain (e.g. an unstable topology).
struct ContractViolation : std::logic_error {
    using std::logic_error::logic_error;
};

/// Spectral curve data that cannot drive the recursion.
struct DegenerateCurveError : std::domain_error {
    using std::domain_error::domain_error;
};

} // namespace trmaps
