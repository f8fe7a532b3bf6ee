#include "spectralrec/voros.hpp"

#include <sstream>
#include <stdexcept>

#include "spectralrec/calculus.hpp"
#include "spectralrec/bernoulli.hpp"
#include "spectralrec/errors.hpp"
#include "spectralrec/quantize.hpp"

namespace spectralrec {

namespace {

using NuLog = LogPolynomial<NuF>;
using NuSeries = HbarSeries<NuF>;

NuLog lift_log(const LogPolynomial<Rational>& p) {
  NuLog r;
  for (int k = 0; k <= p.log_degree(); ++k)
    if (!p.coeff(k).is_zero()) r = r + NuLog::log_term(lift_to_nu(p.coeff(k)), k);
  return r;
}

std::string log_str(const NuLog& p) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  for (int k = 0; k <= p.log_degree(); ++k) {
    if (p.coeff(k).is_zero()) continue;
    if (out.tellp() > 0) out << " + ";
    out << "(" << p.coeff(k).str("L") << ")";
    if (k == 1) out << "*log(L)";
    if (k > 1) out << "*log(L)^" << k;
  }
  return out.str();
}

RelationReport mismatch(int order, const NuLog& lhs, const NuLog& rhs) {
  RelationReport r;
  r.pass = false;
  r.first_failure = order;
  r.detail = "order " + std::to_string(order) + ": " + log_str(lhs) +
             " != " + log_str(rhs);
  return r;
}

/// F(λ;ħ) through ħ^M as a log-algebra series: F₀ħ^{−2} + F₁ + Σ F_g ħ^{2g−2}
/// with F_g(λ) = λ^{2−2g}·F_g(1). Overrides replace the engine values.
NuSeries free_energy_series(Engine& engine, int M,
                            const std::map<int, Rational>& fg_override) {
  auto [f0, f1] = weber_low_genus(engine.model());
  NuSeries f(M);
  f.set(-2, lift_log(f0));
  f.set(0, lift_log(f1));
  for (int g = 2; 2 * g - 2 <= M; ++g) {
    auto it = fg_override.find(g);
    Rational val =
        it != fg_override.end() ? it->second : engine.free_energy(g).value_at_one;
    f.set(2 * g - 2, NuLog(NuRat::x().pow(2 - 2 * g) * NuF(val)));
  }
  return f;
}

/// The Voros series itself as a log-algebra ħ-series, head included.
NuSeries voros_series(const VorosSeries& vs, int M) {
  NuSeries v(M);
  if (vs.has_head) {
    v.set(-1, vs.head_m1);
    v.set(0, vs.head_0);
  }
  for (int m = 1; m <= vs.order && m <= M; ++m)
    v.set(m, NuLog(NuRat::x().pow(-m) * vs.v[m - 1]));
  return v;
}

}  // namespace

VorosSeries voros_coefficients(const RiccatiExpansion& expansion, int M) {
  if (M < 1 || M > expansion.order)
    throw std::invalid_argument("voros_coefficients: need 1 <= M <= order");
  VorosSeries vs;
  vs.order = M;
  for (int m = 1; m <= M; ++m)
    vs.v.push_back(definite_integral_0_to_inf(expansion.T(m)));
  return vs;
}

NuF voros_closed_form(int m) {
  if (m < 1) throw std::invalid_argument("voros_closed_form: m >= 1");
  QPoly b = bernoulli_polynomial(m + 1);
  NuF arg = (nu_param() + NuF(Rational(1))) * Rational(1, 2);
  NuF acc;
  for (int i = b.degree(); i >= 0; --i) acc = acc * arg + NuF(b.coeff(i));
  return acc * Rational(1, m * (m + 1));
}

FreeEnergy free_energy_closed_form(int g) {
  if (g < 2) throw std::invalid_argument("free_energy_closed_form: g >= 2");
  FreeEnergy f;
  f.g = g;
  f.value_at_one = bernoulli_number(2 * g) / Rational(2 * g * (2 * g - 2));
  f.lambda_exponent = 2 - 2 * g;
  f.restricted_sum_matches = true;
  return f;
}

VorosSeries regularized_voros(VorosSeries vs) {
  NuRat lambda = NuRat::x();
  vs.head_m1 = NuLog(NuRat() - lambda) + NuLog::log_term(lambda, 1);
  vs.head_0 =
      NuLog::log_term(NuRat(nu_param()) * NuRat(NuF(Rational(-1, 2))), 1);
  vs.has_head = true;
  return vs;
}

RelationReport verify_main_relation(
    Engine& engine, int M, const std::map<int, Rational>& fg_override) {
  NuF nu = nu_param();
  NuF half(Rational(1, 2));

  // Gates on the model first: only Weber has the closed low-genus data.
  NuSeries f = free_energy_series(engine, M, fg_override);

  auto weights = divisor_weights(engine.model());
  auto qc = quantize(engine.model(), weights);
  auto expansion = riccati_expand(qc, engine.model(), +1, M);
  NuSeries v = voros_series(voros_coefficients(expansion, M), M);
  // λ̂ ± ħ/2 = λ + ħ(±1 − ν)/2
  NuSeries rhs = f.shift_lambda((NuF(Rational(1)) - nu) * half) -
                 f.shift_lambda((NuF(Rational(0)) - NuF(Rational(1)) - nu) * half);
  NuLog df0 = f.coeff(-2).derivative();
  NuSeries heads(M);
  heads.set(-1, df0);
  heads.set(0, df0.derivative() * (NuRat(nu) * NuRat(NuF(Rational(-1, 2)))));
  rhs = rhs - heads;

  int bad = v.first_difference(rhs);
  if (bad > M) return {};
  return mismatch(bad, v.coeff(bad), rhs.coeff(bad));
}

RelationReport verify_weight_difference(Engine& engine, int M) {
  NuF nu = nu_param();
  free_energy_series(engine, 0, {});  // Weber gate

  // V(λ,ν+2) − V(λ,ν) = −log(1 − (ν+1)ħ/(2λ)), order by order at λ=1.
  auto weights = divisor_weights(engine.model());
  auto qc = quantize(engine.model(), weights);
  auto vs = voros_coefficients(riccati_expand(qc, engine.model(), +1, M), M);
  NuF shifted_nu = NuF::x() + NuF(Rational(2));
  NuF u = (nu + NuF(Rational(1))) * Rational(1, 2);  // (ν+1)/(2λ) at λ=1
  for (int m = 1; m <= M; ++m) {
    NuF lhs = vs.v[m - 1].subs(shifted_nu) - vs.v[m - 1];
    NuF rhs = u.pow(m) * Rational(1, m);
    if (!(lhs == rhs))
      return mismatch(m, NuLog(NuRat(lhs)), NuLog(NuRat(rhs)));
  }
  return {};
}

RelationReport verify_lambda_difference(Engine& engine, int M) {
  // F(λ+ħ) − 2F(λ) + F(λ−ħ) = logλ in the log algebra.
  NuSeries f = free_energy_series(engine, M, {});
  NuSeries sum = f.shift_lambda(NuF(Rational(1))) - f - f +
                 f.shift_lambda(NuF(Rational(-1)));
  NuSeries expect(M);
  expect.set(0, NuLog::log_term(NuRat(NuF(Rational(1))), 1));
  int bad = sum.first_difference(expect);
  if (bad > M) return {};
  return mismatch(bad, sum.coeff(bad), expect.coeff(bad));
}

RelationReport verify_difference_equations(Engine& engine, int M) {
  RelationReport r = verify_weight_difference(engine, M);
  if (!r.pass) return r;
  return verify_lambda_difference(engine, M);
}

}  // namespace spectralrec
