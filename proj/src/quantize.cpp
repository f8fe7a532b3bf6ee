#include "spectralrec/quantize.hpp"

#include <stdexcept>
#include <utility>

#include "spectralrec/errors.hpp"

namespace spectralrec {

NuPoly lift_to_nu(const QPoly& p) {
  std::vector<NuF> c(p.degree() + 1);
  for (int e = 0; e <= p.degree(); ++e) c[e] = NuF(p.coeff(e));
  return NuPoly(std::move(c));
}

NuRat lift_to_nu(const QRatFunc& f) {
  return NuRat(lift_to_nu(f.num()), lift_to_nu(f.den()));
}

DivisorWeights::DivisorWeights(const CurveModel& curve,
                               std::map<Point, NuF> weights)
    : w_(std::move(weights)) {
  const auto& B = curve.singular.B;
  if (w_.size() != B.size())
    throw std::invalid_argument("divisor weights: support must be exactly B");
  NuF total;
  for (const auto& [beta, w] : w_) {
    bool known = false;
    for (const auto& b : B) known = known || b == beta;
    if (!known)
      throw std::invalid_argument("divisor weights: " + beta.str() +
                                  " is not in B");
    total = total + w;
  }
  if (!(total == NuF(Rational(1))))
    throw std::invalid_argument("divisor weights: weights must sum to 1, got " +
                                total.str("nu"));
}

const NuF& DivisorWeights::at(const Point& beta) const {
  auto it = w_.find(beta);
  if (it == w_.end())
    throw std::invalid_argument("divisor weights: no weight at " + beta.str());
  return it->second;
}

bool DivisorWeights::symbolic() const {
  for (const auto& [beta, w] : w_)
    if (!w.is_constant()) return true;
  return false;
}

DivisorWeights DivisorWeights::substituted(const CurveModel& curve,
                                           const Rational& value) const {
  std::map<Point, NuF> out;
  for (const auto& [beta, w] : w_) out[beta] = NuF(w.eval(Rational(value)));
  return DivisorWeights(curve, std::move(out));
}

DivisorWeights divisor_weights(const CurveModel& curve) {
  const auto& B = curve.singular.B;
  std::map<Point, NuF> w;
  if (B.size() == 1) {
    w[B[0]] = NuF(Rational(1));
  } else if (B.size() == 2) {
    NuF half(Rational(1, 2));
    w[B[0]] = half - nu_param() * Rational(1, 2);  // (1 - nu)/2
    w[B[1]] = half + nu_param() * Rational(1, 2);  // (1 + nu)/2
  } else {
    throw std::invalid_argument(
        "divisor weights: no canonical one-parameter assignment for |B| = " +
        std::to_string(B.size()) + "; supply explicit weights");
  }
  return DivisorWeights(curve, std::move(w));
}

namespace {

// Element u(x) + v(x)·z of the quadratic extension cut out by the covering,
// over the ν-field: z² = s(x)·z − p(x).
struct Ext {
  NuRat u, v;
};

struct NuCover {
  NuRat s, p;

  explicit NuCover(const QRatFunc& x) {
    auto m = [&](int i) {
      return NuPoly(std::vector<NuF>{NuF(x.num().coeff(i)),
                                     NuF(Rational(0) - x.den().coeff(i))});
    };
    s = NuRat(NuPoly() - m(1), m(2));
    p = NuRat(m(0), m(2));
  }

  Ext reduce_poly(const NuPoly& q) const {
    Ext acc{NuRat(), NuRat()};
    for (int i = q.degree(); i >= 0; --i) {
      // multiply by z:  z·(u + v·z) = −v·p + (u + v·s)·z
      NuRat nu = NuRat() - acc.v * p;
      NuRat nv = acc.u + acc.v * s;
      acc = {nu + NuRat(q.coeff(i)), nv};
    }
    return acc;
  }

  Ext reduce(const NuRat& f) const {
    Ext a = reduce_poly(f.num());
    Ext b = reduce_poly(f.den());
    NuRat norm = b.u * b.u + b.u * b.v * s + b.v * b.v * p;
    if (norm.is_zero())
      throw InternalInconsistency("cover reduction: denominator has norm 0");
    Ext bc{b.u + b.v * s, NuRat() - b.v};
    Ext prod{a.u * bc.u - a.v * bc.v * p,
             a.u * bc.v + a.v * bc.u + a.v * bc.v * s};
    return {prod.u / norm, prod.v / norm};
  }
};

}  // namespace

NuRat descend_to_x(const NuRat& f, const CurveModel& curve) {
  Ext e = NuCover(curve.x).reduce(f);
  if (!e.v.is_zero())
    throw std::domain_error(
        "does not descend: not sigma-invariant (anti-invariant part (" +
        e.v.str("x") + ")*z)");
  if (!(e.u.subs(lift_to_nu(curve.x)) == f))
    throw InternalInconsistency("descend_to_x: round-trip check failed");
  return e.u;
}

QuantumCurve quantize(const CurveModel& curve, const DivisorWeights& weights) {
  NuRat z = NuRat::x();
  NuRat sg = lift_to_nu(curve.sigma);
  NuRat xp = lift_to_nu(curve.xprime);
  NuRat dl = lift_to_nu(curve.delta);
  NuRat xz = lift_to_nu(curve.x);

  // Σ c_β/(z − β) over finite β only: terms at β = ∞ are zero.
  auto pole_sum = [&](auto coeff_of) {
    NuRat acc;
    for (const auto& [beta, w] : weights.weights()) {
      if (beta.is_infinity()) continue;
      NuRat lin = z - NuRat(NuF(beta.value()));
      acc = acc + NuRat(coeff_of(beta, w)) / lin;
    }
    return acc;
  };
  auto conj_weight = [&](const Point& beta) {
    return weights.at(value_at(curve.sigma, beta));
  };

  QuantumCurve qc;
  qc.q0 = NuRat(lift_to_nu(curve.p1), lift_to_nu(curve.p0));
  qc.r0 = NuRat(lift_to_nu(curve.p2), lift_to_nu(curve.p0));

  NuRat rhs_q1 = NuRat() - dl.derivative() / dl +
                 NuRat(NuF(Rational(2))) / (z - sg) -
                 pole_sum([&](const Point& b, const NuF& w) {
                   return w + conj_weight(b);
                 });
  qc.q1 = descend_to_x(rhs_q1 / xp, curve);

  NuF half(Rational(1, 2));
  NuRat rhs_r1 = xp * qc.q0.derivative().subs(xz) * half +
                 xp * qc.q0.subs(xz) * qc.q1.subs(xz) * half +
                 dl * half * pole_sum([&](const Point& b, const NuF& w) {
                   return w - conj_weight(b);
                 });
  qc.r1 = descend_to_x(rhs_r1 / xp, curve);

  NuRat rhs_r2;
  for (const auto& [beta, c] : curve.singular.c_beta) {
    if (beta.is_infinity()) continue;
    NuF coeff = weights.at(beta) * conj_weight(beta) / c;
    rhs_r2 = rhs_r2 + NuRat(coeff) / (z - NuRat(NuF(beta.value())));
  }
  qc.r2 = descend_to_x(dl * rhs_r2 / xp, curve);

  return qc;
}

std::array<NuRat, 3> sl_form(const QuantumCurve& qc) {
  NuF quarter(Rational(1, 4));
  NuF half(Rational(1, 2));
  return {
      qc.q0 * qc.q0 * quarter - qc.r0,
      (qc.q0 * qc.q1 - qc.r1 * Rational(2) + qc.q0.derivative()) * half,
      (qc.q1 * qc.q1 + qc.q1.derivative() * Rational(2) -
       qc.r2 * Rational(4)) *
          quarter,
  };
}

}  // namespace spectralrec
