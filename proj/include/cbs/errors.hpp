#pragma once

#include <stdexcept>
#include <string>

namespace cbs {

/// Caller passed something outside an operation's precondition (bad flag, n < 0, unknown id).
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside a function's mathematical domain, e.g. sqrt(-1) or artanh(2).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numeric result could not be certified: endpoint parameters, imaginary residue,
/// or a sum that does not reach its target inside the term cap.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UncertifiedError : public NumericFailure {
 public:
  using NumericFailure::NumericFailure;
};

}  // namespace cbs
