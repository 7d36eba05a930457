#ifndef MEMKINETICS_ERRORS_HPP
#define MEMKINETICS_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace memkinetics {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the supported domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A Gamma function argument required in a numerator hit a pole.
class PoleError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A series did not meet its stopping rule within the term budget,
/// or cancellation destroyed the requested accuracy.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};

/// Two-term problem whose orders share no denominator q <= 100.
class NonCommensurateError : public DomainError {
 public:
  using DomainError::DomainError;
};

class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Invalid user-facing input (scenario or run configuration), carrying every
/// violated invariant.
class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what, std::vector<std::string> violations = {})
      : Error(what), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

}  // namespace memkinetics

#endif  // MEMKINETICS_ERRORS_HPP
