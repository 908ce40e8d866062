#pragma once

#include <stdexcept>
#include <string>

namespace ergoifc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-domain input (bad probabilities, negative gains, shape mismatch).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// The channel does not belong to the sub-class an operation requires.
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

/// An iterative procedure ran out of budget or produced inconsistent results.
class ConvergenceFailure : public Error {
 public:
  using Error::Error;
};

}  // namespace ergoifc
