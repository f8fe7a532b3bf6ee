#pragma once

#include <utility>
#include <vector>

#include "spectralrec/quantize.hpp"
#include "spectralrec/toprec.hpp"

namespace spectralrec {

/// Coefficients T_m(z) of the ħ-expansion of d/dz log ψ(x(z)), obtained by
/// solving the Riccati recursion of the quantum curve in the z-chart.
struct RiccatiExpansion {
  int branch;            // +1: T_{-1} = y·x', -1: the other sheet
  int order;             // highest computed index M
  std::vector<NuRat> t;  // t[m+1] holds T_m, m = -1..M

  const NuRat& T(int m) const { return t.at(m + 1); }
};

RiccatiExpansion riccati_expand(const QuantumCurve& qc,
                                const CurveModel& curve, int branch, int M);

/// Even/odd decomposition under the sheet involution: writes
/// S_m = T_m/x' as A_m(x) + B_m(x)·√Q₀(x) and returns (A_m, B_m).
std::pair<NuRat, NuRat> even_odd_split(const NuRat& t_m,
                                       const CurveModel& curve);

/// Independent reconstruction of T_m from the correlation functions: the
/// diagonal sum of divisor-integrated W_{g,n} with 2g+n-2 = m. Pulls
/// W_{g,n} from the engine's cache (computing as needed).
NuRat t_hat(Engine& engine, const DivisorWeights& weights, int m);

}  // namespace spectralrec
