#pragma once

#include <string>
#include <utility>
#include <vector>

#include "spectralrec/point.hpp"
#include "spectralrec/ratfunc.hpp"

namespace spectralrec {

enum class RamKind { kZeroOfDx, kDoublePoleOfX };

/// A ramification point of the covering x: P¹ → P¹, with its effectiveness
/// flag (Δ·dx has no pole there) and the order of Δ·dx in the local chart.
struct RamPoint {
  Point location;
  RamKind kind;
  bool effective;
  int ord_delta_dx;
};

/// Singularity bookkeeping for the defining polynomial P(x,y):
/// Sing and Sing₂ live in the x-plane, B and B₁ are their preimages in the
/// z-plane, and c_beta holds the residues of Δ·dx at the points of B₁.
struct SingularData {
  std::vector<Point> sing;   // index ≤ -2
  std::vector<Point> sing2;  // index = -2
  std::vector<Point> B;
  std::vector<Point> B1;
  std::vector<std::pair<Point, Rational>> c_beta;
  std::vector<std::pair<Point, int>> rho;  // index at poles/rational zeros of
                                           // Q0, plus infinity
};

enum class BuiltinTag { kWeber, kAiry, kBessel, kCustom };

/// Element u(x) + v(x)·z of the degree-two extension Q(x)[z]/(M(z)) cut out
/// by the covering map, M(z) = numerator(x(z) - x) as a quadratic in z.
struct CoverElem {
  QRatFunc u, v;
};

/// Arithmetic in that extension. Conjugation swaps the two sheets z ↔ σ(z);
/// an element is a function of x alone iff its v-part vanishes.
class CoverExtension {
 public:
  explicit CoverExtension(const QRatFunc& x);

  // z + σ(z) = s(x) and z·σ(z) = p(x).
  const QRatFunc& sheet_sum() const { return s_; }
  const QRatFunc& sheet_product() const { return p_; }

  CoverElem reduce(const QRatFunc& f) const;  // rewrite f(z) as u + v·z
  CoverElem mul(const CoverElem& a, const CoverElem& b) const;
  CoverElem conj(const CoverElem& e) const;   // u + v·σ(z)
  QRatFunc norm(const CoverElem& e) const;    // (u + vz)(u + vσ(z))

 private:
  QRatFunc s_, p_;
};

struct CurveModel {
  QRatFunc x, y;
  QRatFunc sigma;      // the conjugate involution, a Möbius map
  QPoly p0, p1, p2;    // P(x,y) = p0·y² + p1·y + p2, p0 monic
  QRatFunc q0;         // Q0(x) = (p1/p0)²/4 − p2/p0
  QRatFunc xprime;     // dx/dz
  QRatFunc delta;      // Δ(z) = y(z) − y(σ(z))
  QRatFunc delta_dx;   // Δ(z)·x'(z)
  std::vector<RamPoint> ramification;
  SingularData singular;
  BuiltinTag tag = BuiltinTag::kCustom;

  std::vector<Point> ram_points() const;        // R, canonical order
  std::vector<Point> effective_points() const;  // R*, canonical order
};

/// Validates (x, y) against Def 2.2's non-degeneracy and the assumptions
/// (A1)-(A4), (AQ1), (AQ2); throws CurveValidationError naming the failed
/// assumption. On success every derived field is populated.
CurveModel make_curve(const QRatFunc& x, const QRatFunc& y,
                      BuiltinTag tag = BuiltinTag::kCustom);

CurveModel parse_curve(const std::string& text);

CurveModel weber_curve();   // x = z + 1/z,  y = (z - 1/z)/2
CurveModel airy_curve();    // x = z²,       y = z
CurveModel bessel_curve();  // x = z²,       y = 1/z

/// Lookup by name ("weber" | "airy" | "bessel"); throws std::invalid_argument.
CurveModel builtin_curve(const std::string& name);

/// The global conjugate map of a degree-two covering: writing x = N/D, the
/// antisymmetric expression N(z)D(w) − N(w)D(z) factors as (z−w)·L(z,w) with
/// L bilinear, and σ(z) is the root of L(z,·).
QRatFunc conjugate_map(const QRatFunc& x);

/// Index of P at x₀: the order of Q0 at a finite point, or the order at 0 of
/// Q0(1/x)/x⁴ at infinity.
int index_rho(const QPoly& P0, const QPoly& P1, const QPoly& P2,
              const Point& x0);

// --- point-level utilities on P¹ -----------------------------------------

/// Order of vanishing of f at a point (negative at poles); infinity is read
/// through the w = 1/z chart. f must be nonzero.
int order_at(const QRatFunc& f, const Point& pt);

/// Order of the differential f·dz at a point; at infinity this includes the
/// Jacobian −dw/w².
int differential_order_at(const QRatFunc& f, const Point& pt);

/// Value of f at a point of P¹, as a point of P¹ (poles map to infinity).
Point value_at(const QRatFunc& f, const Point& pt);

/// Solutions z of x(z) = b, each listed once, canonical order. Requires the
/// finite solutions to be rational.
std::vector<Point> preimages(const QRatFunc& x, const Point& b);

}  // namespace spectralrec
