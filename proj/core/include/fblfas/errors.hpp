#pragma once

#include <stdexcept>
#include <string>

namespace fblfas {

/// Caller supplied a value outside an operation's documented domain.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Arguments are individually valid but the requested quantity is undefined
/// for their combination (e.g. a Gumbel scale with ln T <= 0).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An exhaustive search would exceed its hard hypothesis budget.
class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Adaptive quadrature failed to meet its tolerance within the depth limit.
class NumericFailure : public std::runtime_error {
 public:
  NumericFailure(const std::string& what, double best_estimate, double error_bound)
      : std::runtime_error(what), best_estimate_(best_estimate), error_bound_(error_bound) {}

  double best_estimate() const noexcept { return best_estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double best_estimate_;
  double error_bound_;
};

}  // namespace fblfas
