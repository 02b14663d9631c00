#pragma once

#include <stdexcept>
#include <string>

namespace bifix {

// Operands disagree on the number of states, or a state index is out of range.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Structurally invalid query, e.g. the tree of a state that lies in a cycle.
struct DomainError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation does not hold.
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// An enumeration guard rejected the request as too expensive.
struct ResourceLimitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace bifix
