#pragma once

#include <stdexcept>
#include <string>

namespace gini {

/// An argument left the operation's domain: non-finite input, non-positive
/// mean variable, or an invalid configuration value.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The adaptive quadrature failed to reach its tolerance within the depth
/// limit. This signals a kernel bug, not a user error.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A property id was requested that is not in the check registry.
class UnknownPropertyError : public std::invalid_argument {
 public:
  explicit UnknownPropertyError(const std::string& id)
      : std::invalid_argument("unknown property id: " + id) {}
};

}  // namespace gini
