#pragma once

#include <stdexcept>
#include <string>

namespace anosov {

struct InvalidDimension : std::invalid_argument {
  explicit InvalidDimension(const std::string& msg) : std::invalid_argument(msg) {}
};

struct DimensionMismatch : std::invalid_argument {
  explicit DimensionMismatch(const std::string& msg) : std::invalid_argument(msg) {}
};

// Eigenvalue iteration exceeded its cap without deflating every eigenvalue.
struct ConvergenceError : std::runtime_error {
  explicit ConvergenceError(const std::string& msg) : std::runtime_error(msg) {}
};

// Residual cap exceeded while extracting invariant subspaces.
struct DegenerateMatrix : std::runtime_error {
  explicit DegenerateMatrix(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation requires the C-condition (unit determinant, no unit-modulus
// eigenvalues) and the spectrum was flagged otherwise.
struct NotCSystem : std::domain_error {
  explicit NotCSystem(const std::string& msg) : std::domain_error(msg) {}
};

struct TooFewPoints : std::runtime_error {
  explicit TooFewPoints(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace anosov
