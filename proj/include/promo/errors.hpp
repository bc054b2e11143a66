#pragma once

#include <stdexcept>
#include <string>

namespace promo {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or rejected configuration input (CLI exit code 2).
struct ConfigError : Error {
    using Error::Error;
};

/// Parameters outside the supported "seller preferred" regime, or an
/// optimization whose feasible set is empty (CLI exit code 3).
struct RegimeError : Error {
    using Error::Error;
};

struct InfeasibleError : RegimeError {
    using RegimeError::RegimeError;
};

/// Internal numeric failure (CLI exit code 4).
struct NumericError : Error {
    using Error::Error;
};

/// A zero-probability event was observed; indicates a simulator bug rather
/// than a recoverable condition.
struct InconsistentObservationError : NumericError {
    using NumericError::NumericError;
};

}  // namespace promo
