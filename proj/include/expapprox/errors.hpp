#pragma once

#include <stdexcept>
#include <string>

namespace expapprox {

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of subdivisions with the error estimate
// still above tolerance.
struct BudgetExhausted : NumericError {
  using NumericError::NumericError;
};

// An integrand returned NaN or infinity at a quadrature node.
struct NonFinite : NumericError {
  using NumericError::NumericError;
};

// The declared decay envelope does not give a finite tail integral.
struct TailUnbounded : NumericError {
  using NumericError::NumericError;
};

struct ZeroFunction : NumericError {
  using NumericError::NumericError;
};

struct GridTooCoarse : NumericError {
  using NumericError::NumericError;
};

struct NoConvergence : NumericError {
  using NumericError::NumericError;
};

struct UnknownCheck : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

}  // namespace expapprox
