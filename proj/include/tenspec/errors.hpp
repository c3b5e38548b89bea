#pragma once

#include <stdexcept>
#include <string>

namespace tenspec {

/// Base class of every error thrown by this library.
class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed tensor description: bad shape, index out of range,
/// duplicate sparse index, entry-count mismatch.
class validation_error : public error {
public:
  using error::error;
};

/// A hypothesis of the invoked result does not hold: dimension mismatch,
/// zero row sum, missing nonnegativity, non-positive scaling vector,
/// digraph not weakly connected.
class precondition_error : public error {
public:
  using error::error;
};

/// A configured storage or enumeration cap would be exceeded.
class resource_limit_error : public error {
public:
  using error::error;
};

/// An iterative solver failed to reach its tolerance or lost positivity.
class convergence_error : public error {
public:
  using error::error;
};

}  // namespace tenspec
