#pragma once

#include <stdexcept>
#include <string>

namespace census {

/// Raised when a coset enumeration or search outgrows its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised when an accepted subgroup fails one of the face-pairing conditions.
class CertificationFailure : public std::runtime_error {
 public:
  CertificationFailure(std::string condition, const std::string& detail)
      : std::runtime_error(condition + ": " + detail), condition_(std::move(condition)) {}

  const std::string& condition() const noexcept { return condition_; }

 private:
  std::string condition_;
};

/// H1 has more torsion factors than the five-slot "abcde" notation can hold.
class OverflowSlotError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace census
