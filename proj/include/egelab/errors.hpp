#pragma once

#include <stdexcept>
#include <string>

namespace egelab {

// Argument outside the mathematical domain of an operation (z = 0, t outside [0,1], |z| >= 1, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Incompatible matrix orders.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// An exact oracle would exceed its enumeration budget. Oracles fail loudly instead of truncating.
class UnsupportedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace egelab
