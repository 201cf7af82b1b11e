#pragma once

#include <stdexcept>
#include <string>

namespace dephase {

// Numeric failures (exit code 3 in the CLI).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotHermitianError : NumericError {
    using NumericError::NumericError;
};

struct NoConvergenceError : NumericError {
    using NumericError::NumericError;
};

struct DimensionMismatchError : NumericError {
    using NumericError::NumericError;
};

// Expectation value of a Hermitian operator came back with an imaginary
// residue above tolerance; signals a kernel bug, never silently truncated.
struct NonRealExpectationError : NumericError {
    using NumericError::NumericError;
};

struct GridTooSmallError : NumericError {
    using NumericError::NumericError;
};

struct NonUniformGridError : NumericError {
    using NumericError::NumericError;
};

// Configuration problems (exit code 2 in the CLI).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MissingSeriesError : ConfigError {
    using ConfigError::ConfigError;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace dephase
