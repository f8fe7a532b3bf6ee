#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "spectralrec/polynomial.hpp"

namespace spectralrec {

/// Quotient of two polynomials over a field K, kept in canonical form:
/// gcd(num, den) = 1 and den monic. The set of these is itself a field, so
/// towers like Q(nu) = RationalFunction<Rational> nest.
template <class K>
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(K(1)) {}
  RationalFunction(K c) : num_(std::move(c)), den_(K(1)) {}  // NOLINT
  RationalFunction(long c) : num_(K(c)), den_(K(1)) {}       // NOLINT
  RationalFunction(Polynomial<K> p) : num_(std::move(p)), den_(K(1)) {}  // NOLINT
  RationalFunction(Polynomial<K> n, Polynomial<K> d)
      : num_(std::move(n)), den_(std::move(d)) {
    normalize();
  }

  static RationalFunction x() { return RationalFunction(Polynomial<K>::x()); }

  const Polynomial<K>& num() const { return num_; }
  const Polynomial<K>& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }
  bool is_constant() const { return num_.is_constant() && den_.is_one(); }
  K constant_value() const {
    if (!is_constant())
      throw std::domain_error("RationalFunction: not a constant");
    return num_.constant_term();
  }

  RationalFunction operator-() const {
    RationalFunction r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RationalFunction operator+(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator-(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFunction operator*(const RationalFunction& a,
                                    const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFunction operator/(const RationalFunction& a,
                                    const RationalFunction& b) {
    if (b.is_zero())
      throw std::domain_error("RationalFunction: division by zero");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
  }
  RationalFunction operator*(const K& s) const {
    return RationalFunction(num_ * s, den_);
  }

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
    return !(a == b);
  }

  RationalFunction inv() const {
    if (is_zero()) throw std::domain_error("RationalFunction: inverse of zero");
    return RationalFunction(den_, num_);
  }

  RationalFunction derivative() const {
    return RationalFunction(
        num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  /// Exact evaluation; throws if v is a pole.
  K eval(const K& v) const {
    K d = den_.eval(v);
    if (d.is_zero())
      throw std::domain_error("RationalFunction: evaluation at a pole");
    return num_.eval(v) / d;
  }

  bool is_pole(const K& v) const {
    return den_.eval(v).is_zero();
  }

  /// Composition with a rational map m: returns (*this) o m, normalized.
  RationalFunction subs(const RationalFunction& m) const {
    RationalFunction one(K(1));
    RationalFunction n = num_.subs(m, one);
    RationalFunction d = den_.subs(m, one);
    return n / d;
  }

  RationalFunction pow(int e) const {
    if (e < 0) return inv().pow(-e);
    RationalFunction r(K(1)), base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  /// Degree at infinity: deg num - deg den (order of growth). Zero: INT_MIN/2.
  int degree_at_infinity() const {
    if (is_zero()) return -1 << 28;
    return num_.degree() - den_.degree();
  }

  /// Limit as the variable tends to infinity; throws if divergent.
  K limit_at_infinity() const {
    if (is_zero()) return K(0);
    int d = degree_at_infinity();
    if (d > 0)
      throw std::domain_error("RationalFunction: divergent at infinity");
    if (d < 0) return K(0);
    return num_.lead() / den_.lead();
  }

  std::string str(const std::string& var) const {
    if (den_.is_one()) return num_.str(var);
    std::string n = num_.str(var);
    std::string d = den_.str(var);
    auto wrap = [](const std::string& s) {
      return s.find_first_of("+- ") != std::string::npos ? "(" + s + ")" : s;
    };
    return wrap(n) + "/" + wrap(d);
  }
  std::string str() const { return str("t"); }

 private:
  void normalize() {
    if (den_.is_zero())
      throw std::domain_error("RationalFunction: zero denominator");
    if (num_.is_zero()) {
      den_ = Polynomial<K>(K(1));
      return;
    }
    auto g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = num_ / g;
      den_ = den_ / g;
    }
    K lc = den_.lead();
    if (!(lc == K(1))) {
      num_ = num_ / lc;
      den_ = den_ / lc;
    }
  }

  Polynomial<K> num_, den_;
};

using QRatFunc = RationalFunction<Rational>;

namespace detail {

template <class K>
bool parameter_free(const Polynomial<RationalFunction<K>>& p) {
  for (const auto& c : p.coeffs())
    if (!c.is_constant()) return false;
  return true;
}

template <class K>
Polynomial<K> lower(const Polynomial<RationalFunction<K>>& p) {
  std::vector<K> c;
  c.reserve(p.coeffs().size());
  for (const auto& f : p.coeffs()) c.push_back(f.constant_value());
  return Polynomial<K>(std::move(c));
}

template <class K>
Polynomial<RationalFunction<K>> raise(const Polynomial<K>& p) {
  std::vector<RationalFunction<K>> c;
  c.reserve(p.coeffs().size());
  for (const auto& v : p.coeffs()) c.emplace_back(v);
  return Polynomial<RationalFunction<K>>(std::move(c));
}

template <class K>
bool eval_parameter(const Polynomial<RationalFunction<K>>& p, const K& v,
                    Polynomial<K>& out) {
  std::vector<K> c;
  c.reserve(p.coeffs().size());
  for (const auto& f : p.coeffs()) {
    if (f.is_pole(v)) return false;
    c.push_back(f.eval(v));
  }
  out = Polynomial<K>(std::move(c));
  return true;
}

}  // namespace detail

/// gcd over K(t)[z]. The generic pseudo-remainder sequence suffers badly
/// from coefficient swell here, so exploit structure instead: when both
/// sides are free of the parameter t, drop down to K[z]; when one side is,
/// the gcd is parameter-free too and can be found by specializing t and
/// confirming with one exact division. Only the fully parameter-dependent
/// case (which normalize() never produces in practice) falls back to the PRS.
template <class K>
Polynomial<RationalFunction<K>> gcd(const Polynomial<RationalFunction<K>>& a,
                                    const Polynomial<RationalFunction<K>>& b) {
  using P = Polynomial<RationalFunction<K>>;
  if (a.is_zero()) return b.is_zero() ? b : b.monic();
  if (b.is_zero()) return a.monic();
  bool fa = detail::parameter_free(a), fb = detail::parameter_free(b);
  if (fa && fb) return detail::raise(gcd(detail::lower(a), detail::lower(b)));
  if (fa || fb) {
    const P& dependent = fa ? b : a;
    Polynomial<K> g = detail::lower(fa ? a : b).monic();
    long pt = 2;
    for (int stalls = 0; stalls < 8 && !g.is_constant(); ++pt) {
      Polynomial<K> ev;
      if (!detail::eval_parameter(dependent, K(pt), ev)) continue;
      auto g2 = gcd(g, ev);
      if (g2.degree() < g.degree()) {
        g = std::move(g2);
        continue;
      }
      // Candidate stable under a fresh specialization: verify exactly.
      if ((dependent % detail::raise(g)).is_zero()) return detail::raise(g);
      ++stalls;
    }
    if (g.is_constant()) return P(RationalFunction<K>(K(1)));
  }
  return detail::gcd_prs(a, b);
}

/// gcd of numerators over lcm of denominators; dividing a coefficient vector
/// by this clears every denominator and leaves no common polynomial factor.
template <class K>
struct ContentOps<RationalFunction<K>> {
  static RationalFunction<K> content(
      const std::vector<RationalFunction<K>>& v) {
    Polynomial<K> g, l(K(1));
    for (const auto& f : v) {
      if (f.is_zero()) continue;
      g = gcd(g, f.num());
      l = l * (f.den() / gcd(l, f.den()));
    }
    if (g.is_zero()) return RationalFunction<K>(K(1));
    RationalFunction<K> c(g, l);
    // Dividing by g/l clears the denominators; what remains can still share
    // content one level down (e.g. a common rational factor), and leaving it
    // in place lets coefficient sizes compound across Euclidean steps.
    std::vector<K> flat;
    for (const auto& f : v) {
      if (f.is_zero()) continue;
      auto cleared = f / c;
      for (const auto& co : cleared.num().coeffs()) flat.push_back(co);
    }
    return c * RationalFunction<K>(ContentOps<K>::content(flat));
  }
};

}  // namespace spectralrec
