#pragma once

#include <string>

#include "json.hpp"
#include "spectralrec/multidiff.hpp"
#include "spectralrec/quantize.hpp"
#include "spectralrec/toprec.hpp"
#include "spectralrec/voros.hpp"

namespace spectralrec {

using Json = nlohmann::json;

enum class Format { kJson, kText, kLatex };
Format parse_format(const std::string& name);  // throws on unknown name

// JSON encoding conventions: rationals are strings "p/q", polynomials are
// exponent -> coefficient objects, rational functions are {"num","den"}
// pairs, multidifferentials carry their variable list explicitly. Every
// to_json below round-trips through the matching from_json exactly.

Json to_json(const Rational& v);
Rational rational_from_json(const Json& j);

Json to_json(const QRatFunc& f);
QRatFunc ratfunc_from_json(const Json& j);

Json to_json(const NuRat& f);
NuRat nurat_from_json(const Json& j);

Json to_json(const MultiDifferential& w);
MultiDifferential multidiff_from_json(const Json& j);

Json to_json(const QuantumCurve& qc);
QuantumCurve quantum_curve_from_json(const Json& j);

Json to_json(const FreeEnergy& f);
FreeEnergy free_energy_from_json(const Json& j);

Json to_json(const VorosSeries& vs);
VorosSeries voros_from_json(const Json& j);

// Text renderings: exact expressions, re-parsable by the expression grammar
// where it applies (single-variable data). LaTeX renderings denote the same
// expressions.
std::string text_of(const QRatFunc& f, const std::string& var = "z");
std::string text_of(const NuRat& f, const std::string& var = "x");
std::string text_of(const MultiDifferential& w);
std::string latex_of(const QRatFunc& f, const std::string& var = "z");
std::string latex_of(const NuRat& f, const std::string& var = "x");

/// "λ^{e}" with the sign folded into the exponent.
std::string lambda_power(int exponent);

}  // namespace spectralrec
