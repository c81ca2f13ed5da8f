#pragma once

#include <stdexcept>
#include <string>

namespace kerrkit {

// Input outside the physical domain (horizon, axis, extremal spin).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke an operation precondition (jet order, CFL, lambda <= 0).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Iterative solve did not reach tolerance within its budget.
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unknown configuration.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace kerrkit
