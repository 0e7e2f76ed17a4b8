#pragma once

#include <stdexcept>
#include <string>

namespace hacc {

// Violated precondition or inconsistent argument set.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Argument outside the mathematical domain of a function (e.g. a <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid run or module configuration. Maps to CLI exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-convergence, ill-conditioning or a physically invalid state.
// Maps to CLI exit code 3.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A particle left the overload halo of its owner between two refreshes.
class OverloadEscapeError : public NumericError {
 public:
  using NumericError::NumericError;
};

// Filesystem and format errors. Maps to CLI exit code 4.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hacc
