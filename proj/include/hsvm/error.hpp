#pragma once

#include <stdexcept>
#include <string>

namespace hsvm {

// Base of all library errors. Subclasses group failures by how a caller
// (the CLI in particular) should react: bad input vs. numerical breakdown.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Input violates a documented precondition (bad shape, invalid point, ...).
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Point lies outside the model's domain or too close to its boundary.
class DomainError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Weight vector with w*w >= 0: its decision boundary misses the hyperboloid.
class InfeasibleWeightsError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// Nothing left to score, e.g. every class lacks positives in a holdout set.
class EvaluationError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace hsvm
