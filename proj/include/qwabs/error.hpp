#pragma once

#include <stdexcept>
#include <string>

namespace qwabs {

/// Input failed a mathematical validity check (e.g. a non-unitary coin).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation was requested outside the range where its formula holds.
class ScopeError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Evaluation point lies too close to a pole of a generating function.
class PoleProximityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A series or closed form does not converge for the given parameters.
class DivergenceError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Request refused because it would take exponential time or memory.
class RefusalError : public std::length_error {
 public:
  using std::length_error::length_error;
};

}  // namespace qwabs
