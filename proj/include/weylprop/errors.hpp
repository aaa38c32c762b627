#pragma once

#include <stdexcept>
#include <string>

namespace weylprop {

// Permutation and word lengths disagree, or an index is out of range.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed or inconsistent input (specs, JSON files, graph structure).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Weyl element or family carries a component with zero input or output arity.
class UnreducedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A computation hit its declared bound before it could finish.
class TruncatedError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace weylprop
