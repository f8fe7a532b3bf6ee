#pragma once

#include <map>

#include "spectralrec/calculus.hpp"
#include "spectralrec/ratfunc.hpp"

namespace spectralrec {

/// Element of the log algebra: sum_k c_k(lambda) (log lambda)^k with the c_k
/// rational functions of lambda over the field K. Closed under d/dlambda.
template <class K>
class LogPolynomial {
 public:
  using F = RationalFunction<K>;

  LogPolynomial() = default;
  LogPolynomial(F base) { set(0, std::move(base)); }  // NOLINT
  static LogPolynomial log_term(F coeff, int k) {
    LogPolynomial p;
    p.set(k, std::move(coeff));
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  int log_degree() const { return c_.empty() ? -1 : (int)c_.size() - 1; }
  const F& coeff(int k) const {
    static const F kZero{};
    if (k < 0 || k >= (int)c_.size()) return kZero;
    return c_[k];
  }
  /// The purely rational part (log-degree zero coefficient).
  const F& base() const { return coeff(0); }

  LogPolynomial operator-() const {
    LogPolynomial r = *this;
    for (auto& c : r.c_) c = F(0) - c;
    return r;
  }
  friend LogPolynomial operator+(const LogPolynomial& a,
                                 const LogPolynomial& b) {
    LogPolynomial r;
    int n = std::max(a.log_degree(), b.log_degree());
    for (int k = 0; k <= n; ++k) r.set(k, a.coeff(k) + b.coeff(k));
    return r;
  }
  friend LogPolynomial operator-(const LogPolynomial& a,
                                 const LogPolynomial& b) {
    return a + (-b);
  }
  friend LogPolynomial operator*(const LogPolynomial& a,
                                 const LogPolynomial& b) {
    LogPolynomial r;
    for (int i = 0; i <= a.log_degree(); ++i)
      for (int j = 0; j <= b.log_degree(); ++j)
        r.set(i + j, r.coeff(i + j) + a.coeff(i) * b.coeff(j));
    return r;
  }
  LogPolynomial operator*(const F& s) const {
    LogPolynomial r;
    for (int k = 0; k <= log_degree(); ++k) r.set(k, coeff(k) * s);
    return r;
  }

  friend bool operator==(const LogPolynomial& a, const LogPolynomial& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const LogPolynomial& a, const LogPolynomial& b) {
    return !(a == b);
  }

  /// d/dlambda, using (log lambda)' = 1/lambda.
  LogPolynomial derivative() const {
    LogPolynomial r;
    F lam = F::x();
    for (int k = 0; k <= log_degree(); ++k) {
      F d = coeff(k).derivative();
      if (k + 1 <= log_degree())
        d = d + coeff(k + 1) * F(K(long(k + 1))) / lam;
      r.set(k, d);
    }
    return r;
  }

 private:
  void set(int k, F v) {
    if ((int)c_.size() <= k) c_.resize(k + 1);
    c_[k] = std::move(v);
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<F> c_;  // coefficient of (log lambda)^k
};

/// Truncated formal series in hbar with LogPolynomial coefficients:
/// sum_{m >= lead} hbar^m c_m(lambda), kept only for m <= truncation order M.
/// All arithmetic truncates consistently at M.
template <class K>
class HbarSeries {
 public:
  using LP = LogPolynomial<K>;
  using F = typename LP::F;

  explicit HbarSeries(int order) : order_(order) {}

  int truncation_order() const { return order_; }
  bool is_zero() const { return c_.empty(); }

  const LP& coeff(int m) const {
    static const LP kZero{};
    auto it = c_.find(m);
    return it == c_.end() ? kZero : it->second;
  }
  void set(int m, LP v) {
    if (m > order_) return;
    if (v.is_zero())
      c_.erase(m);
    else
      c_[m] = std::move(v);
  }
  const std::map<int, LP>& coeffs() const { return c_; }

  HbarSeries operator-() const {
    HbarSeries r(order_);
    for (const auto& [m, c] : c_) r.set(m, -c);
    return r;
  }
  friend HbarSeries operator+(const HbarSeries& a, const HbarSeries& b) {
    HbarSeries r(std::min(a.order_, b.order_));
    for (const auto& [m, c] : a.c_) r.set(m, c);
    for (const auto& [m, c] : b.c_) r.set(m, r.coeff(m) + c);
    return r;
  }
  friend HbarSeries operator-(const HbarSeries& a, const HbarSeries& b) {
    return a + (-b);
  }
  friend HbarSeries operator*(const HbarSeries& a, const HbarSeries& b) {
    HbarSeries r(std::min(a.order_, b.order_));
    for (const auto& [i, ci] : a.c_)
      for (const auto& [j, cj] : b.c_)
        if (i + j <= r.order_) r.set(i + j, r.coeff(i + j) + ci * cj);
    return r;
  }

  friend bool operator==(const HbarSeries& a, const HbarSeries& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const HbarSeries& a, const HbarSeries& b) {
    return !(a == b);
  }

  /// First hbar order at which the two series differ (order_+1 if equal).
  int first_difference(const HbarSeries& o) const {
    int hi = std::min(order_, o.order_);
    for (int m = -2; m <= hi; ++m)
      if (coeff(m) != o.coeff(m)) return m;
    return hi + 1;
  }

  /// Shift lambda -> lambda + c*hbar as the Taylor series
  /// sum_k (c hbar)^k / k! d^k/dlambda^k, truncated at M.
  HbarSeries shift_lambda(const K& c) const {
    HbarSeries r(order_);
    for (const auto& [m, cm] : c_) {
      LP d = cm;
      K ck(1);
      Rational kfact(1);
      for (int k = 0; m + k <= order_; ++k) {
        if (k > 0) {
          d = d.derivative();
          ck = ck * c;
          kfact *= Rational(k);
        }
        r.set(m + k, r.coeff(m + k) +
                         d * (F(ck) * F(FieldTraits<K>::embed(kfact.inv()))));
      }
    }
    return r;
  }

 private:
  int order_;
  std::map<int, LP> c_;
};

}  // namespace spectralrec
