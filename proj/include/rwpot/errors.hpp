#pragma once

#include <stdexcept>
#include <string>

namespace rwpot {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An operation's precondition on its inputs does not hold (e.g. F does not
// strictly dominate G).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Iterative method failed to meet its tolerance within budget.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Enumeration or search budget exhausted.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A coupled realization produced omega_F < omega_G somewhere, or a coupled
// cost difference came out negative.
class CouplingViolation : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The model assumption behind an estimator fails (infinite mean in d = 1).
class ModelAssumptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Lyapunov curve does not cover the lambda range a computation needs.
class CoverageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rwpot
