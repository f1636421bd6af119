#pragma once

#include <stdexcept>
#include <string>

namespace lcint {

// Caller handed us something outside an operation's domain.
class PreconditionError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// Operands live in different rings / ball spaces.
class SpecMismatch : public PreconditionError {
public:
  using PreconditionError::PreconditionError;
};

// A refinement, enumeration or precision budget ran out.
class BudgetExhausted : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Something that must hold by construction did not. Always a bug.
class InvariantViolation : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

}  // namespace lcint
