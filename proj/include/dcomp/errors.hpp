#pragma once

#include <stdexcept>
#include <string>

namespace dcomp {

// Out-of-domain or non-finite argument.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// Series/quadrature failed to converge, or a result overflowed.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateInputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct OutOfCoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PlacementError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

struct ConfigError : std::invalid_argument {
  ConfigError(std::string key, const std::string& msg)
      : std::invalid_argument(key.empty() ? msg : key + ": " + msg), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

}  // namespace dcomp
