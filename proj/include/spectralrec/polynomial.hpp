#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectralrec/rational.hpp"

namespace spectralrec {

/// Dense univariate polynomial over a field K. Coefficients are stored with
/// trailing zeros trimmed; the zero polynomial has an empty coefficient
/// vector and degree() == -1 (sentinel).
///
/// K must be a field: default-constructible as 0, constructible from long,
/// with +, -, *, /, ==, and is_zero().
template <class K>
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(K c) {  // NOLINT: constant polynomial
    if (!c.is_zero()) c_.push_back(std::move(c));
  }
  explicit Polynomial(std::vector<K> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial x() { return monomial(K(1), 1); }
  static Polynomial monomial(K c, int e) {
    Polynomial p;
    if (c.is_zero()) return p;
    p.c_.assign(e + 1, K(0));
    p.c_[e] = std::move(c);
    return p;
  }

  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == K(1); }
  bool is_constant() const { return c_.size() <= 1; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const K& coeff(int e) const {
    static const K kZero{};
    if (e < 0 || e >= static_cast<int>(c_.size())) return kZero;
    return c_[e];
  }
  const K& lead() const {
    if (is_zero()) throw std::domain_error("Polynomial: lead of zero");
    return c_.back();
  }
  const std::vector<K>& coeffs() const { return c_; }

  K constant_term() const { return coeff(0); }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = K(0) - c;
    return r;
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), K(0));
    for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.coeff(i) + b.coeff(i);
    r.trim();
    return r;
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    return a + (-b);
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Polynomial r;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, K(0));
    for (size_t i = 0; i < a.c_.size(); ++i)
      for (size_t j = 0; j < b.c_.size(); ++j)
        r.c_[i + j] = r.c_[i + j] + a.c_[i] * b.c_[j];
    r.trim();
    return r;
  }
  Polynomial operator*(const K& s) const {
    Polynomial r = *this;
    for (auto& c : r.c_) c = c * s;
    r.trim();
    return r;
  }
  Polynomial operator/(const K& s) const { return *this * (K(1) / s); }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.c_ == b.c_;
  }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) {
    return !(a == b);
  }

  /// Euclidean division: *this = q * d + r with deg r < deg d.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("Polynomial: division by zero");
    Polynomial q, r = *this;
    if (r.degree() >= d.degree()) {
      q.c_.assign(r.degree() - d.degree() + 1, K(0));
      while (!r.is_zero() && r.degree() >= d.degree()) {
        int e = r.degree() - d.degree();
        K c = r.lead() / d.lead();
        q.c_[e] = c;
        // r -= c * x^e * d
        for (int i = 0; i <= d.degree(); ++i)
          r.c_[e + i] = r.c_[e + i] - c * d.c_[i];
        r.trim();
      }
      q.trim();
    }
    return {q, r};
  }
  friend Polynomial operator/(const Polynomial& a, const Polynomial& b) {
    return a.divmod(b).first;
  }
  friend Polynomial operator%(const Polynomial& a, const Polynomial& b) {
    return a.divmod(b).second;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this / lead();
  }

  Polynomial derivative() const {
    Polynomial r;
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = c_[i] * K(long(i));
    r.trim();
    return r;
  }

  K eval(const K& v) const {  // Horner
    K r(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * v + *it;
    return r;
  }

  /// Substitute x -> g for any ring element g supporting * and +.
  template <class R>
  R subs(const R& g, const R& one) const {
    R r = one * K(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = r * g + one * *it;
    return r;
  }

  Polynomial pow(int e) const {
    Polynomial r(K(1)), base = *this;
    while (e > 0) {
      if (e & 1) r = r * base;
      base = base * base;
      e >>= 1;
    }
    return r;
  }

  /// Shift of the variable: p(x + a).
  Polynomial shifted(const K& a) const {
    Polynomial xa({a, K(1)});
    return subs(xa, Polynomial(K(1)));
  }

  /// Reversal x -> 1/x scaled by x^deg: x^deg * p(1/x).
  Polynomial reversed() const {
    Polynomial r = *this;
    std::reverse(r.c_.begin(), r.c_.end());
    r.trim();
    return r;
  }

  /// Multiplicity of the root 0 (i.e. order of x | p). Zero polynomial: -1.
  int order_at_zero() const {
    if (is_zero()) return -1;
    int k = 0;
    while (c_[k].is_zero()) ++k;
    return k;
  }

  /// p / x^k, requires x^k | p.
  Polynomial shifted_down(int k) const {
    if (k == 0) return *this;
    Polynomial r;
    r.c_.assign(c_.begin() + k, c_.end());
    return r;
  }

  std::string str(const std::string& var) const {
    if (is_zero()) return "0";
    std::string out;
    for (int e = degree(); e >= 0; --e) {
      if (coeff(e).is_zero()) continue;
      std::string cs = coeff(e).str();
      bool neg = !cs.empty() && cs[0] == '-';
      if (out.empty()) {
        if (neg) { out += "-"; cs = cs.substr(1); }
      } else {
        out += neg ? " - " : " + ";
        if (neg) cs = cs.substr(1);
      }
      bool needs_paren = cs.find_first_of("+- /") != std::string::npos &&
                         !(cs.find('/') != std::string::npos &&
                           cs.find_first_of("+- ") == std::string::npos);
      if (e == 0) {
        out += needs_paren ? "(" + cs + ")" : cs;
      } else {
        if (cs != "1") out += (needs_paren ? "(" + cs + ")" : cs) + "*";
        out += var;
        if (e > 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }
  std::vector<K> c_;
};

/// Content of a coefficient vector: a scalar c such that dividing every
/// coefficient by c keeps them "small" (integral over the underlying ring).
/// The primary template is the trivial one; Rational and RationalFunction
/// coefficients get real content extraction. Removing content from every
/// Euclidean remainder is what keeps gcd from suffering the classic
/// coefficient blow-up of the naive PRS over fraction fields.
template <class K>
struct ContentOps {
  static K content(const std::vector<K>&) { return K(1); }
};

template <>
struct ContentOps<Rational> {
  // gcd of numerators over lcm of denominators: dividing by it yields
  // integer coefficients with no common factor.
  static Rational content(const std::vector<Rational>& v) {
    mpz_class g = 0, l = 1;
    for (const auto& q : v) {
      if (q.is_zero()) continue;
      mpz_class n = q.num(), d = q.den();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    if (g == 0) return Rational(1);
    return Rational(mpq_class(g) / mpq_class(l));
  }
};

namespace detail {

template <class K>
Polynomial<K> gcd_prs(Polynomial<K> a, Polynomial<K> b) {
  auto primitive = [](Polynomial<K>& p) {
    if (p.is_zero()) return;
    K c = ContentOps<K>::content(p.coeffs());
    if (!(c == K(1))) p = p * Polynomial<K>(K(1) / c);
  };
  primitive(a);
  primitive(b);
  if (a.degree() < b.degree()) std::swap(a, b);
  while (!b.is_zero()) {
    // Pseudo-remainder: scale by the leading coefficient instead of dividing
    // by it, so every intermediate stays inside the underlying ring (no
    // fractions to normalize). Content removal after each step then keeps
    // coefficient growth polynomial -- the primitive PRS.
    Polynomial<K> r = std::move(a);
    const Polynomial<K> lcb(b.lead());
    while (!r.is_zero() && r.degree() >= b.degree()) {
      int k = r.degree() - b.degree();
      r = r * lcb - Polynomial<K>::monomial(r.lead(), k) * b;
    }
    primitive(r);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero()) return a;
  return a.monic();
}

}  // namespace detail

template <class K>
Polynomial<K> gcd(Polynomial<K> a, Polynomial<K> b) {
  return detail::gcd_prs(std::move(a), std::move(b));
}

using QPoly = Polynomial<Rational>;

}  // namespace spectralrec
