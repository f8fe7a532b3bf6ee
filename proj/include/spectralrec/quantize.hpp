#pragma once

#include <array>
#include <map>

#include "spectralrec/curve.hpp"
#include "spectralrec/ratfunc.hpp"

namespace spectralrec {

/// Scalar field for everything carrying divisor weights: rational functions
/// of the weight parameter ν. NuRat is then a rational function of z (or of
/// x, depending on context) with such scalars as coefficients.
using NuF = RationalFunction<Rational>;
using NuPoly = Polynomial<NuF>;
using NuRat = RationalFunction<NuF>;

/// The parameter ν itself, as a scalar.
inline NuF nu_param() { return NuF::x(); }

NuPoly lift_to_nu(const QPoly& p);
NuRat lift_to_nu(const QRatFunc& f);

/// Weights ν_β on the divisor support B = x⁻¹(Sing P), with Σ_β ν_β = 1.
class DivisorWeights {
 public:
  /// Explicit assignment; keys must be exactly B and must sum to 1.
  DivisorWeights(const CurveModel& curve, std::map<Point, NuF> weights);

  const std::map<Point, NuF>& weights() const { return w_; }
  const NuF& at(const Point& beta) const;
  bool symbolic() const;

  /// Same support with ν evaluated at a rational value.
  DivisorWeights substituted(const CurveModel& curve,
                             const Rational& value) const;

 private:
  std::map<Point, NuF> w_;
};

/// Canonical weights: for |B| = 1 the single weight is 1; for |B| = 2 the
/// two points get (1∓ν)/2 in canonical point order, so ν is the second
/// weight minus the first. Larger B needs an explicit assignment.
DivisorWeights divisor_weights(const CurveModel& curve);

/// Rewrites a σ-invariant function of z as a function of x with
/// g(x(z)) = f(z), by reduction in the degree-two extension cut out by the
/// covering. Throws std::domain_error when f is not σ-invariant.
NuRat descend_to_x(const NuRat& f, const CurveModel& curve);

/// Coefficients of ħ²d²/dx² + (q₀+ħq₁)·ħ d/dx + (r₀+ħr₁+ħ²r₂), all rational
/// functions of x (coefficients rational in ν).
struct QuantumCurve {
  NuRat q0, q1, r0, r1, r2;
};

QuantumCurve quantize(const CurveModel& curve, const DivisorWeights& weights);

/// Potential of the associated Schrödinger form ħ²d²/dx² − Q(x,ħ), as its
/// three ħ-coefficients Q₀ + ħQ₁ + ħ²Q₂.
std::array<NuRat, 3> sl_form(const QuantumCurve& qc);

}  // namespace spectralrec
