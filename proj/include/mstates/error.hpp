#pragma once

#include <stdexcept>
#include <string>

namespace mstates {

/// Bad input: malformed files, violated preconditions, out-of-range parameters.
/// The CLI maps this to exit code 1.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Failures while reading a price panel. Messages name the offending row/column.
class IngestError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

/// Numerical breakdown at runtime (degenerate series, solver failure).
/// The CLI maps this to exit code 2.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mstates
