#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pfdyn {

/// Bad arguments, malformed configuration, dimension mismatches.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation that could not be completed (divergence, no convergence).
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An orbit left the representable range. Carries the step at which it happened.
struct OverflowError : NumericalError {
    OverflowError(const std::string& what, std::size_t step_index)
        : NumericalError(what + " (step " + std::to_string(step_index) + ")"),
          step(step_index) {}
    std::size_t step;
};

/// A request exceeded a configured resource cap (e.g. series truncation order).
struct ResourceError : NumericalError {
    using NumericalError::NumericalError;
};

}  // namespace pfdyn
