#include "spectralrec/wkb.hpp"

#include <map>
#include <stdexcept>
#include <utility>

#include "spectralrec/errors.hpp"

namespace spectralrec {

RiccatiExpansion riccati_expand(const QuantumCurve& qc,
                                const CurveModel& curve, int branch, int M) {
  NuRat xz = lift_to_nu(curve.x);
  NuRat xp = lift_to_nu(curve.xprime);
  NuRat u0 = xp * qc.q0.subs(xz);
  NuRat u1 = xp * qc.q1.subs(xz);
  NuRat log_xp = xp.derivative() / xp;  // x''/x'
  NuRat v1 = xp * xp * qc.r1.subs(xz);
  NuRat v2 = xp * xp * qc.r2.subs(xz);

  RiccatiExpansion ex;
  ex.branch = branch >= 0 ? 1 : -1;
  ex.order = M;
  NuRat y = lift_to_nu(curve.y);
  if (ex.branch < 0) y = y - lift_to_nu(curve.delta);  // y(σ(z))
  ex.t.push_back(y * xp);
  {
    NuRat v0 = xp * xp * qc.r0.subs(xz);
    if (!(ex.T(-1) * ex.T(-1) + u0 * ex.T(-1) + v0).is_zero())
      throw InternalInconsistency("riccati: T_{-1} root check failed");
  }
  NuRat denom = ex.T(-1) * Rational(2) + u0;  // = ±x'(z)Δ(z), nonzero by (AQ2)
  for (int m = -1; m < M; ++m) {
    NuRat num = (u1 - log_xp) * ex.T(m) + ex.T(m).derivative();
    for (int j = 0; j <= m; ++j) num = num + ex.T(m - j) * ex.T(j);
    if (m == -1) num = num + v1;
    if (m == 0) num = num + v2;
    ex.t.push_back((NuRat() - num) / denom);
  }
  return ex;
}

std::pair<NuRat, NuRat> even_odd_split(const NuRat& t_m,
                                       const CurveModel& curve) {
  NuRat sg = lift_to_nu(curve.sigma);
  NuRat s = t_m / lift_to_nu(curve.xprime);
  NuRat s_conj = s.subs(sg);
  NuF half(Rational(1, 2));
  NuRat a = descend_to_x((s + s_conj) * half, curve);
  NuRat b = descend_to_x((s - s_conj) / lift_to_nu(curve.delta), curve);
  return {a, b};
}

namespace {

// ∫ over ζ ∈ D(z) of (ζ - r)^{-k} dζ: the antiderivative evaluated at z
// minus its weighted values at the divisor base points (zero at ∞).
NuRat divisor_integral_factor(const DivisorWeights& weights,
                              const Rational& r, int k) {
  if (k < 2)
    throw LogObstruction(
        "divisor integral: first-order pole in a trailing variable");
  auto primitive = [&](const NuRat& at) {
    NuF c(Rational(-1, k - 1));
    return NuRat(c) * (at - NuRat(NuF(r))).pow(1 - k);
  };
  NuRat acc = primitive(NuRat::x());
  for (const auto& [beta, w] : weights.weights()) {
    if (beta.is_infinity()) continue;  // the primitive vanishes there
    if (beta.value() == r)
      throw InternalInconsistency(
          "divisor integral: divergent at a base point");
    acc = acc - NuRat(w) * primitive(NuRat(NuF(beta.value())));
  }
  return acc;
}

}  // namespace

NuRat t_hat(Engine& engine, const DivisorWeights& weights, int m) {
  const CurveModel& curve = engine.model();
  NuRat z = NuRat::x();
  if (m < -1) throw std::invalid_argument("t_hat: m >= -1 required");
  if (m == -1) return lift_to_nu(engine.w01());
  if (m == 0) {
    // -G_{0,2}(σ(z), z)/dz with the regularized closed form
    NuRat acc = (z - lift_to_nu(curve.sigma)).inv();
    for (const auto& [beta, w] : weights.weights()) {
      Point sb = value_at(curve.sigma, beta);
      if (sb.is_infinity()) continue;
      acc = acc - NuRat(w) / (z - NuRat(NuF(sb.value())));
    }
    return NuRat() - acc;
  }

  NuRat total;
  std::map<std::pair<Rational, int>, NuRat> memo;
  for (int g = 0; 2 * g <= m + 1; ++g) {
    int n = m + 2 - 2 * g;
    NuRat diag;
    for (const auto& [key, coeff] : engine.correlation(g, n).terms()) {
      NuRat term =
          NuRat(NuF(coeff)) * (z - NuRat(NuF(key[0].pole))).pow(-key[0].order);
      for (int j = 1; j < n; ++j) {
        auto mk = std::make_pair(key[j].pole, key[j].order);
        auto it = memo.find(mk);
        if (it == memo.end())
          it = memo.emplace(mk, divisor_integral_factor(weights, mk.first,
                                                        mk.second))
                   .first;
        term = term * it->second;
      }
      diag = diag + term;
    }
    total = total + diag * NuF(factorial(n - 1).inv());
  }
  return total;
}

}  // namespace spectralrec
