#pragma once

#include <stdexcept>
#include <string>

namespace snewton {

enum class ErrorCategory {
  invalid_parameter,
  configuration,
  numerical_failure,
  boundary_reached,
  io,
};

const char* to_string(ErrorCategory category) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class InvalidParameter : public Error {
 public:
  explicit InvalidParameter(const std::string& what)
      : Error(ErrorCategory::invalid_parameter, what) {}
};

class ConfigurationError : public Error {
 public:
  explicit ConfigurationError(const std::string& what)
      : Error(ErrorCategory::configuration, what) {}
};

class NumericalFailure : public Error {
 public:
  explicit NumericalFailure(const std::string& what)
      : Error(ErrorCategory::numerical_failure, what) {}
};

/// Raised when the wave packet reaches the edge of the computational domain.
/// Carries the dimensionless time at which the guard tripped.
class BoundaryReached : public Error {
 public:
  BoundaryReached(const std::string& what, double t_tilde)
      : Error(ErrorCategory::boundary_reached, what), t_tilde_(t_tilde) {}

  double t_tilde() const noexcept { return t_tilde_; }

 private:
  double t_tilde_;
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

}  // namespace snewton
