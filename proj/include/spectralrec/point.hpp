#pragma once

#include <string>

#include "spectralrec/rational.hpp"

namespace spectralrec {

/// A point of the projective line over Q: a finite rational value or the
/// point at infinity. Infinity is handled everywhere through the w = 1/z
/// chart.
class Point {
 public:
  Point() : inf_(false), v_(0) {}
  explicit Point(Rational v) : inf_(false), v_(std::move(v)) {}
  static Point infinity() {
    Point p;
    p.inf_ = true;
    return p;
  }

  bool is_infinity() const { return inf_; }
  const Rational& value() const {
    if (inf_) throw std::domain_error("Point: value() of infinity");
    return v_;
  }

  friend bool operator==(const Point& a, const Point& b) {
    if (a.inf_ != b.inf_) return false;
    return a.inf_ || a.v_ == b.v_;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }

  /// Canonical order: finite rationals ascending by value, then infinity.
  friend bool operator<(const Point& a, const Point& b) {
    if (a.inf_) return false;
    if (b.inf_) return true;
    return a.v_ < b.v_;
  }

  std::string str() const { return inf_ ? "inf" : v_.str(); }

 private:
  bool inf_;
  Rational v_;
};

}  // namespace spectralrec
