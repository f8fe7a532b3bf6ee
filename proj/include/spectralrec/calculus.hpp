#pragma once

#include <map>
#include <utility>
#include <vector>

#include "spectralrec/errors.hpp"
#include "spectralrec/point.hpp"
#include "spectralrec/ratfunc.hpp"

namespace spectralrec {

// ---------------------------------------------------------------------------
// Field traits: embedding of Q and linear-root extraction.
// ---------------------------------------------------------------------------

template <class K>
struct FieldTraits;

namespace detail {

// All positive divisors of |n| by trial division. Throws when n is too large
// to factor this way; inputs here are square-free-part coefficients, which
// stay small in every supported workload.
std::vector<mpz_class> divisors(const mpz_class& n);

}  // namespace detail

/// Roots of a square-free polynomial over Q, via the rational root theorem.
/// Returns roots found; the caller detects non-split leftovers by degree.
std::vector<Rational> rational_roots_squarefree(const QPoly& p);

template <>
struct FieldTraits<Rational> {
  static Rational embed(const Rational& q) { return q; }
  static bool constant(const Rational& v, Rational& out) {
    out = v;
    return true;
  }
  static std::vector<Rational> roots_squarefree(const QPoly& p) {
    return rational_roots_squarefree(p);
  }
};

template <class K>
struct FieldTraits<RationalFunction<K>> {
  using F = RationalFunction<K>;
  static F embed(const Rational& q) {
    return F(FieldTraits<K>::embed(q));
  }
  static bool constant(const F& v, Rational& out) {
    if (!v.is_constant()) return false;
    return FieldTraits<K>::constant(v.constant_value(), out);
  }
  // Roots of a square-free polynomial over K(t). Handles the two cases that
  // occur here: a degree-1 factor (root in the field) and factors whose
  // coefficients are all constants (delegated down the tower).
  static std::vector<F> roots_squarefree(const Polynomial<F>& p) {
    std::vector<F> roots;
    if (p.degree() == 1) {
      roots.push_back((F(0) - p.coeff(0)) / p.coeff(1));
      return roots;
    }
    std::vector<Rational> consts(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i)
      if (!constant(p.coeff(i), consts[i])) return roots;  // none found
    QPoly q{std::vector<Rational>(consts.begin(), consts.end())};
    for (const auto& r : FieldTraits<Rational>::roots_squarefree(q))
      roots.push_back(embed(r));
    return roots;
  }
};

// ---------------------------------------------------------------------------
// Laurent series
// ---------------------------------------------------------------------------

/// Truncated Laurent expansion of a rational function at a point. Coefficients
/// run over exponents lead()..order(); for the zero function lead == order+1
/// and the list is empty. At infinity the expansion variable is w = 1/z.
template <class K>
class LaurentSeries {
 public:
  LaurentSeries(Point p, int lead, std::vector<K> coeffs, int order)
      : p_(std::move(p)), lead_(lead), coeffs_(std::move(coeffs)),
        order_(order) {}

  const Point& point() const { return p_; }
  int lead() const { return lead_; }
  int order() const { return order_; }
  bool is_zero() const { return coeffs_.empty(); }

  const K& coeff(int e) const {
    static const K kZero{};
    if (e < lead_ || e > order_ || e - lead_ >= (int)coeffs_.size())
      return kZero;
    return coeffs_[e - lead_];
  }

 private:
  Point p_;
  int lead_;
  std::vector<K> coeffs_;
  int order_;
};

/// Expansion of f about z = 0 up to and including z^order.
template <class K>
LaurentSeries<K> laurent_at_zero(const RationalFunction<K>& f, int order) {
  if (f.is_zero()) return {Point(Rational(0)), order + 1, {}, order};
  int a = f.num().order_at_zero();
  int b = f.den().order_at_zero();
  if (b < 0) throw ParameterDegeneracy("laurent: denominator vanished");
  auto n1 = f.num().shifted_down(a);
  auto d1 = f.den().shifted_down(b);
  int lead = a - b;
  int count = order - lead + 1;
  if (count <= 0) return {Point(Rational(0)), order + 1, {}, order};
  // power series division n1/d1 mod z^count
  std::vector<K> s(count, K(0));
  K d0 = d1.coeff(0);
  for (int k = 0; k < count; ++k) {
    K acc = n1.coeff(k);
    for (int j = 0; j < k; ++j) acc = acc - s[j] * d1.coeff(k - j);
    s[k] = acc / d0;
  }
  // exact leading exponent: strip leading zero coefficients (cancellation
  // cannot occur here since n1(0), d1(0) != 0, but keep the invariant tight)
  return {Point(Rational(0)), lead, std::move(s), order};
}

/// Expansion of f about a finite point or infinity (variable w = 1/z there).
template <class K>
LaurentSeries<K> laurent_expand(const RationalFunction<K>& f, const Point& p,
                                int order) {
  using RF = RationalFunction<K>;
  LaurentSeries<K> s = [&] {
    if (p.is_infinity()) {
      RF winv(Polynomial<K>(K(1)), Polynomial<K>::x());  // z = 1/w
      return laurent_at_zero(f.subs(winv), order);
    }
    K a = FieldTraits<K>::embed(p.value());
    RF shifted(RF(f.num().shifted(a)) / RF(f.den().shifted(a)));
    return laurent_at_zero(shifted, order);
  }();
  std::vector<K> cs;
  for (int e = s.lead(); e <= s.order(); ++e) cs.push_back(s.coeff(e));
  return {p, s.lead(), std::move(cs), order};
}

/// Residue of the differential f(z) dz at p. At infinity this is the residue
/// of -f(1/w)/w^2 dw at w = 0.
template <class K>
K residue_at(const RationalFunction<K>& f, const Point& p) {
  using RF = RationalFunction<K>;
  if (p.is_infinity()) {
    RF w = RF::x();
    RF winv(Polynomial<K>(K(1)), Polynomial<K>::x());
    RF g = (RF(0) - f.subs(winv)) / (w * w);
    return laurent_at_zero(g, -1).coeff(-1);
  }
  return laurent_expand(f, p, -1).coeff(-1);
}

// ---------------------------------------------------------------------------
// Square-free decomposition and linear factorization
// ---------------------------------------------------------------------------

/// Yun's algorithm: monic square-free factors with multiplicities, so that
/// p = lead * prod factor_i ^ mult_i.
template <class K>
std::vector<std::pair<Polynomial<K>, int>> squarefree_decomposition(
    const Polynomial<K>& p) {
  std::vector<std::pair<Polynomial<K>, int>> out;
  if (p.degree() <= 0) return out;
  auto a = p.monic();
  auto g = gcd(a, a.derivative());
  auto c = a / g;
  auto d = a.derivative() / g - c.derivative();
  int i = 1;
  while (!c.is_constant()) {
    auto f = gcd(c, d);
    if (f.degree() > 0) out.emplace_back(f, i);
    c = c / f;
    d = d / f - c.derivative();
    ++i;
  }
  return out;
}

/// Full linear factorization p = lead * prod (z - root_i)^mult_i.
/// Throws NonSplitDenominator when a non-linear factor survives.
template <class K>
std::vector<std::pair<K, int>> linear_factorization(const Polynomial<K>& p) {
  std::vector<std::pair<K, int>> out;
  for (const auto& [f, mult] : squarefree_decomposition(p)) {
    auto roots = FieldTraits<K>::roots_squarefree(f);
    if ((int)roots.size() != f.degree())
      throw NonSplitDenominator(
          "denominator factor of degree " + std::to_string(f.degree()) +
          " does not split into linear factors over the scalar field");
    for (auto& r : roots) out.emplace_back(std::move(r), mult);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Partial fractions, antiderivative, definite integral
// ---------------------------------------------------------------------------

template <class K>
struct PartialFractions {
  struct Term {
    K pole;
    int order;  // >= 1; the term is coeff / (z - pole)^order
    K coeff;
  };
  Polynomial<K> poly;
  std::vector<Term> terms;

  RationalFunction<K> reassemble() const {
    using RF = RationalFunction<K>;
    RF r{poly};
    for (const auto& t : terms) {
      RF lin(Polynomial<K>({K(0) - t.pole, K(1)}));
      r = r + RF(t.coeff) / lin.pow(t.order);
    }
    return r;
  }
};

template <class K>
PartialFractions<K> partial_fractions(const RationalFunction<K>& f) {
  PartialFractions<K> out;
  auto [q, r] = f.num().divmod(f.den());
  out.poly = q;
  if (r.is_zero()) return out;
  RationalFunction<K> proper(r, f.den());
  for (const auto& [pole, mult] : linear_factorization(proper.den())) {
    // principal part at `pole` from the Laurent expansion
    Rational pv;
    LaurentSeries<K> s =
        FieldTraits<K>::constant(pole, pv)
            ? laurent_expand(proper, Point(pv), -1)
            : laurent_at_zero(
                  proper.subs(RationalFunction<K>(
                      Polynomial<K>({pole, K(1)}))),
                  -1);
    for (int j = 1; j <= mult; ++j) {
      const K& c = s.coeff(-j);
      if (!c.is_zero()) out.terms.push_back({pole, j, c});
    }
  }
  return out;
}

/// Primitive of the rational differential f dz: a rational part plus explicit
/// log terms, one per pole carrying a non-zero residue. The integration
/// constant is fixed to 0.
template <class K>
struct Antiderivative {
  RationalFunction<K> rational;
  std::vector<std::pair<K, K>> logs;  // (pole, coefficient of log(z - pole))
};

template <class K>
Antiderivative<K> antiderivative(const RationalFunction<K>& f) {
  using RF = RationalFunction<K>;
  Antiderivative<K> out;
  auto pf = partial_fractions(f);
  // polynomial part
  Polynomial<K> ip;
  {
    std::vector<K> c(pf.poly.degree() + 2, K(0));
    for (int e = 0; e <= pf.poly.degree(); ++e)
      c[e + 1] = pf.poly.coeff(e) / K(e + 1);
    ip = Polynomial<K>(std::move(c));
  }
  out.rational = RF(ip);
  for (const auto& t : pf.terms) {
    RF lin(Polynomial<K>({K(0) - t.pole, K(1)}));
    if (t.order == 1) {
      out.logs.emplace_back(t.pole, t.coeff);
    } else {
      // d/dz [ -c / ((k-1)(z-p)^(k-1)) ] = c/(z-p)^k
      K c = K(0) - t.coeff / K(t.order - 1);
      out.rational = out.rational + RF(c) / lin.pow(t.order - 1);
    }
  }
  return out;
}

/// Exact integral of f dz over the path from z = 0 to z = infinity, defined
/// when the primitive is purely rational with finite limits at both ends.
template <class K>
K definite_integral_0_to_inf(const RationalFunction<K>& f) {
  auto anti = antiderivative(f);
  if (!anti.logs.empty())
    throw LogObstruction(
        "log obstruction: primitive has a surviving log term");
  K at_inf;
  try {
    at_inf = anti.rational.limit_at_infinity();
  } catch (const std::domain_error&) {
    throw DivergentEndpoint("divergent endpoint: limit at infinity");
  }
  if (anti.rational.is_pole(K(0)))
    throw DivergentEndpoint("divergent endpoint: pole at 0");
  return at_inf - anti.rational.eval(K(0));
}

}  // namespace spectralrec
