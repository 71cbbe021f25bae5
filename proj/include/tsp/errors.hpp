#pragma once

#include <stdexcept>
#include <string>

namespace tsp {

/// Raised when an input violates an operation's precondition.
class DomainError : public std::domain_error {
  public:
    explicit DomainError(const std::string &what) : std::domain_error(what) {}
};

/// Raised when an iterative numerical routine fails. Carries the best value
/// reached and the number of iterations spent, when meaningful.
class NumericError : public std::runtime_error {
  public:
    NumericError(const std::string &what, double best_value = 0.0, long iterations = 0)
        : std::runtime_error(what), best_value_(best_value), iterations_(iterations) {}

    double best_value() const noexcept { return best_value_; }
    long iterations() const noexcept { return iterations_; }

  private:
    double best_value_;
    long iterations_;
};

}  // namespace tsp
