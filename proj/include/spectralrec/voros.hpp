#pragma once

#include <map>
#include <string>
#include <vector>

#include "spectralrec/hbar.hpp"
#include "spectralrec/toprec.hpp"
#include "spectralrec/wkb.hpp"

namespace spectralrec {

/// Voros coefficients V_m, 1 ≤ m ≤ order, stored at λ = 1; the λ-dependence
/// is restored by the exponent law V_m(λ,ν) = λ^{−m}·V_m(1,ν). With the
/// regularization head attached the series is ħ^{−1}V₋₁ + V₀ + Σ_m V_m ħ^m.
struct VorosSeries {
  int order = 0;
  std::vector<NuF> v;  // v[m-1] = V_m(1,ν)
  bool has_head = false;
  LogPolynomial<NuF> head_m1;  // V₋₁(λ)
  LogPolynomial<NuF> head_0;   // V₀(λ,ν)
};

/// V_m = ∫₀^∞ T_m dz for m = 1..M. The path is represented by its endpoints
/// only; a first-order pole anywhere on it surfaces as a LogObstruction.
VorosSeries voros_coefficients(const RiccatiExpansion& expansion, int M);

/// B_{m+1}((ν+1)/2) / (m(m+1)), the closed form of V_m(1,ν).
NuF voros_closed_form(int m);

/// B_{2g} / (2g(2g−2)) with λ-exponent 2−2g, the closed form of F_g.
FreeEnergy free_energy_closed_form(int g);

/// Attaches V₋₁ = λlogλ − λ = ∂λF₀ and V₀ = −(ν/2)logλ = −(ν/2)∂²λF₀.
VorosSeries regularized_voros(VorosSeries vs);

struct RelationReport {
  bool pass = true;
  int first_failure = 0;  // ħ-order (or m) of the first mismatch
  std::string detail;
};

/// Checks V = F(λ̂+ħ/2;ħ) − F(λ̂−ħ/2;ħ) − ħ^{−1}∂λF₀ + (ν/2)∂²λF₀ with
/// λ̂ = λ − ħν/2, coefficient-by-coefficient through ħ^M. The engine must
/// carry the model this expansion belongs to; fg_override substitutes free
/// energies (useful for fault injection).
RelationReport verify_main_relation(
    Engine& engine, int M, const std::map<int, Rational>& fg_override = {});

/// Checks V(λ,ν+2) − V(λ,ν) = −log(1 − (ν+1)ħ/(2λ)) through ħ^M.
RelationReport verify_weight_difference(Engine& engine, int M);

/// Checks the three-term relation F(λ+ħ) − 2F(λ) + F(λ−ħ) = logλ through ħ^M.
RelationReport verify_lambda_difference(Engine& engine, int M);

/// Both difference equations; reports the first failure of either.
RelationReport verify_difference_equations(Engine& engine, int M);

}  // namespace spectralrec
