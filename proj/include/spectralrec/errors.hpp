#pragma once

#include <stdexcept>
#include <string>

namespace spectralrec {

/// Base for all domain errors raised by the algebra and recursion layers.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Specializing parameters made a denominator vanish identically.
struct ParameterDegeneracy : Error {
  using Error::Error;
};

/// A denominator has an irreducible non-linear factor over the scalar field.
struct NonSplitDenominator : Error {
  using Error::Error;
};

/// A definite integral hit a non-vanishing log term.
struct LogObstruction : Error {
  using Error::Error;
};

/// A definite integral endpoint limit does not exist.
struct DivergentEndpoint : Error {
  using Error::Error;
};

/// Curve rejected: a named paper assumption fails. `assumption` is one of
/// "A1".."A4", "AQ1", "AQ2".
struct CurveValidationError : Error {
  CurveValidationError(std::string assumption_, const std::string& what)
      : Error("(" + assumption_ + ") violated: " + what),
        assumption(std::move(assumption_)) {}
  std::string assumption;
};

/// Grammar error in a curve file, with a byte offset.
struct ParseError : Error {
  ParseError(size_t pos_, const std::string& what)
      : Error("parse error at position " + std::to_string(pos_) + ": " + what),
        pos(pos_) {}
  size_t pos;
};

/// Requested computation exceeds the configured 2g+n cap.
struct ResourceCapExceeded : Error {
  using Error::Error;
};

/// An internal cross-check failed; indicates a bug, not bad input.
struct InternalInconsistency : Error {
  using Error::Error;
};

}  // namespace spectralrec
