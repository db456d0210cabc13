#pragma once

#include <stdexcept>
#include <string>

namespace rlr {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: bad file, index out of range, shape mismatch.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Arithmetic precondition violated (modulus mismatch, inverse of zero, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// An exhaustive enumeration would exceed the configured evaluation budget.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(const std::string& quantifier, unsigned long long needed,
                 unsigned long long budget)
      : Error("enumeration budget exceeded for " + quantifier + ": needs " +
              std::to_string(needed) + " evaluations, budget is " +
              std::to_string(budget)),
        quantifier_(quantifier) {}

  const std::string& quantifier() const noexcept { return quantifier_; }

 private:
  std::string quantifier_;
};

}  // namespace rlr
