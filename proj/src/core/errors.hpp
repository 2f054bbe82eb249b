#pragma once

#include <stdexcept>
#include <string>

namespace su2lqu {

// Invalid input: spins, probabilities, dimensions, ranges.
class DomainError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed to meet its tolerance or iteration budget.
// `residual` carries the diagnostic quantity (off-diagonal norm, negative
// eigenvalue, best objective value found so far, ...).
class NumericalError : public std::runtime_error {
public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

private:
  double residual_;
};

}  // namespace su2lqu
