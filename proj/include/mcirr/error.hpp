#pragma once

#include <stdexcept>
#include <string>

namespace mcirr {

/// Base of every error thrown by the library.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (rational literals, tuple files).
struct parse_error : error {
    using error::error;
};

/// A tuple or argument violates a structural invariant.
struct validation_error : error {
    using error::error;
};

/// A mathematical hypothesis of an operation does not hold
/// (semisimplicity, rational spectrum, non-degenerate quotient, ...).
struct precondition_error : error {
    using error::error;
};

/// Raised by the reduction loop when an assumption of the
/// addition/middle-convolution argument fails on the current tuple.
struct assumption_violated : precondition_error {
    using precondition_error::precondition_error;
};

}  // namespace mcirr
