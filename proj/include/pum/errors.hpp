#pragma once

#include <stdexcept>
#include <string>

namespace pum {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid arguments, malformed input files, or bad configuration.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A data or evaluation point that no patch covers.
class CoveringError : public Error {
 public:
  using Error::Error;
};

/// Linear-system factorization failed even after jitter escalation.
class ConditioningError : public Error {
 public:
  using Error::Error;
};

}  // namespace pum
