#pragma once

#include <string>

#include "spectralrec/ratfunc.hpp"

namespace spectralrec {

/// Raw result of reading a curve file: the two defining rational functions,
/// before any validation.
struct ParsedCurve {
  QRatFunc x, y;
};

/// Parses curve source text of the form
///
///   x = <expr>;   # comment
///   y = <expr>;
///
/// where expr is built from integers, `z`, + - * /, `^` with an integer
/// exponent, and parentheses. Rational literals like 1/2 come out of the
/// division operator. Throws ParseError with a byte offset on bad input.
ParsedCurve parse_curve_source(const std::string& text);

/// Parses a single expression (the right-hand side grammar above).
QRatFunc parse_expr_source(const std::string& text);

}  // namespace spectralrec
