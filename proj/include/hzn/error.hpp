#pragma once

#include <stdexcept>
#include <string>

namespace hzn {

// Base for every failure raised by the library. The CLI maps the concrete
// subclasses onto exit codes, so keep the hierarchy flat.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the domain of a function (pole, excluded set, bad count).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Dilogarithm argument on the open ray (1, inf).
class CutError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A principal logarithm would have to be taken across (-inf, 0].
class BranchError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Quadrature or series failed to reach its tolerance.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

// Integrand returned NaN/inf at a node.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hzn
