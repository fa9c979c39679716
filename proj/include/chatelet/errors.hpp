#pragma once

#include <stdexcept>
#include <string>

namespace chatelet {

// Invalid input for an operation (zero where nonzero required, bad spec, ...).
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Factorization gave up on a cofactor beyond the configured size.
struct FactorLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computation exceeded a configured work budget.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical invariant that must hold was observed to fail.
struct InvariantViolation : std::logic_error {
  using std::logic_error::logic_error;
};

} // namespace chatelet
