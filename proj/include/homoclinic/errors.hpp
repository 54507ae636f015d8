#pragma once

#include <stdexcept>
#include <string>

namespace homoclinic {

/// Invalid parameters or schedules (bad config, violated preconditions).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A numerical procedure could not deliver its post-condition (iteration
/// budget exhausted, step underflow, degenerate tangent vector).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reading a config or writing results failed.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace homoclinic
