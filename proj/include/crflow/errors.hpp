#pragma once

#include <stdexcept>
#include <string>

namespace crflow {

/// A point or parameter left the region where a formula is well defined
/// (outside eps0/delta0, cosine or positivity guard, log branch, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Malformed model file, suite config or command-line input.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace crflow
