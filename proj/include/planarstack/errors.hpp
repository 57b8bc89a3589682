#pragma once

#include <stdexcept>
#include <string>

namespace planarstack {

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument values (non-positive frequency, |r12| >= 1, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A model or stack cannot be evaluated at the requested mode
// (ideal mirror asked for a finite epsilon, complex constant on the
// imaginary axis, layerwise fold over an opaque stack, ...).
class EvaluationError : public Error {
 public:
  using Error::Error;
};

// beta_j + gamma*beta_k vanished at a single interface.
class DegenerateInterfaceError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

// |1 - r r e^{2 i beta d}| fell below the configured floor.
class ResonantSingularityError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

// Adjacent stack parts do not share a boundary medium.
class ChainMismatchError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

// A tabulated coefficient source has no data at the requested mode.
class CoverageError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

// Transmittance requested with an opaque or evanescent outer medium.
class UndefinedTransmittanceError : public EvaluationError {
 public:
  using EvaluationError::EvaluationError;
};

// Quadrature failed to reach the requested tolerance. Carries the
// partial estimate and per-axis evaluation counts for diagnostics.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double partial_value,
                   double error_estimate, long outer_evaluations,
                   long inner_evaluations)
      : Error(what),
        partial_value(partial_value),
        error_estimate(error_estimate),
        outer_evaluations(outer_evaluations),
        inner_evaluations(inner_evaluations) {}

  double partial_value;
  double error_estimate;
  long outer_evaluations;
  long inner_evaluations;
};

// Malformed input file. line/column are 1-based; column 0 means
// "whole line".
class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, int column = 0)
      : Error(what + " (line " + std::to_string(line) +
              (column > 0 ? ", column " + std::to_string(column) : "") + ")"),
        line(line),
        column(column) {}

  int line;
  int column;
};

}  // namespace planarstack
