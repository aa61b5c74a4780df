#pragma once

#include <stdexcept>
#include <string>

namespace nodal {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct FieldMismatch : Error {
    using Error::Error;
};
struct DivisionByZero : Error {
    using Error::Error;
};
struct EmptySet : Error {
    using Error::Error;
};
struct DimensionMismatch : Error {
    using Error::Error;
};
struct EqualPoints : Error {
    using Error::Error;
};
struct ZeroForm : Error {
    using Error::Error;
};
struct FieldTooLarge : Error {
    using Error::Error;
};
struct PointOnCenter : Error {
    using Error::Error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};

/// A randomized construction ran out of retries (field too small or
/// degenerate input).
struct GenericityFailure : Error {
    using Error::Error;
};

struct ParseError : Error {
    using Error::Error;
};
struct InvariantViolation : Error {
    using Error::Error;
};

/// The requested point imposes a dependent condition: no form of the
/// requested degree vanishes on the rest of the set while missing it.
struct NotSeparable : Error {
    using Error::Error;
};

struct PreconditionViolation : Error {
    using Error::Error;
};

}  // namespace nodal
