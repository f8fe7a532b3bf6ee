#pragma once

#include <map>
#include <utility>

#include "spectralrec/curve.hpp"
#include "spectralrec/hbar.hpp"
#include "spectralrec/multidiff.hpp"

namespace spectralrec {

/// F_g of a curve at the scale-parameter value 1, with the homogeneity
/// exponent restoring the parameter dependence: F_g(λ) = value·λ^{2−2g}.
/// restricted_sum_matches records whether summing the defining residues over
/// effective ramification points only gives the same value as over all of
/// them (it always has so far; the flag surfaces any counterexample).
struct FreeEnergy {
  int g;
  Rational value_at_one;
  int lambda_exponent;
  bool restricted_sum_matches;
};

/// The kernel k(z_0, z) with K = k·dz_0/dz, evaluated at a rational z_0.
/// Refuses ineffective points (their residue contribution is zero).
QRatFunc recursion_kernel(const CurveModel& curve, const RamPoint& r,
                          const Rational& z0);

/// Correlation-function engine: memoized exact evaluation of the residue
/// recursion over the effective ramification points, plus free energies.
class Engine {
 public:
  explicit Engine(CurveModel curve, int cap = 9);

  const CurveModel& model() const { return curve_; }
  int cap() const { return cap_; }
  void set_cap(int cap) { cap_ = cap; }

  /// W_{0,1} = y dx: the dz-coefficient y(z)·x'(z).
  QRatFunc w01() const { return curve_.y * curve_.xprime; }
  /// W_{0,2} = dz_0 dz_1/(z_0 − z_1)².
  static MultiDifferential w02() { return MultiDifferential::bergman(); }

  /// W_{g,n} for 2g + n ≥ 3; throws ResourceCapExceeded past the cap.
  const MultiDifferential& correlation(int g, int n);

  /// F_g for g ≥ 2 from the residues of Φ·W_{g,1} over ramification points.
  FreeEnergy free_energy(int g);

  using Cache = std::map<std::pair<int, int>, MultiDifferential>;
  const Cache& cache() const { return memo_; }
  void preload(int g, int n, MultiDifferential w);

 private:
  MultiDifferential compute(int g, int n);

  CurveModel curve_;
  int cap_;
  Cache memo_;
};

/// Weber F₀ = −(3/4)λ² + (1/2)λ²·log λ and F₁ = −(1/12)·log λ, as
/// polynomials in log λ with rational-function coefficients in λ.
/// Throws std::invalid_argument for any other curve.
std::pair<LogPolynomial<Rational>, LogPolynomial<Rational>> weber_low_genus(
    const CurveModel& curve);

/// Checks ∂^n_λ F_g |_{λ=1} against the n-fold regularized integral of
/// W_{g,n} over (0,∞) in every variable (Weber only, 2g+n ≥ 3).
bool verify_variational(Engine& engine, int g, int n);

}  // namespace spectralrec
