// End-to-end acceptance checks, one line of output per criterion. Every
// comparison is exact; a criterion also fails if it exceeds its time budget.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include "spectralrec/calculus.hpp"
#include "spectralrec/curve.hpp"
#include "spectralrec/errors.hpp"
#include "spectralrec/parser.hpp"
#include "spectralrec/quantize.hpp"
#include "spectralrec/toprec.hpp"
#include "spectralrec/voros.hpp"
#include "spectralrec/wkb.hpp"

using namespace spectralrec;

namespace {

QRatFunc z() { return QRatFunc::x(); }
Rational q(long n, long d = 1) { return Rational(n, d); }
NuRat nz(const std::string& s) { return lift_to_nu(parse_expr_source(s)); }

int failures = 0;

void criterion(const std::string& name, double budget_seconds,
               const std::function<bool()>& body) {
  using clock = std::chrono::steady_clock;
  auto start = clock::now();
  bool ok = false;
  std::string note;
  try {
    ok = body();
  } catch (const std::exception& e) {
    note = std::string(" (") + e.what() + ")";
  }
  double elapsed = std::chrono::duration<double>(clock::now() - start).count();
  if (ok && budget_seconds > 0 && elapsed > budget_seconds) {
    ok = false;
    note = " (over time budget)";
  }
  std::printf("%s  %s  [%.2fs]%s\n", ok ? "pass" : "FAIL", name.c_str(),
              elapsed, note.c_str());
  if (!ok) ++failures;
}

const RamPoint& ram_at(const CurveModel& c, const Point& p) {
  for (const auto& r : c.ramification)
    if (r.location == p) return r;
  throw std::logic_error("no such ramification point");
}

bool closed_form_correlations() {
  Engine e(weber_curve());
  bool ok = e.correlation(1, 1).to_ratfunc() ==
            QRatFunc(q(-1)) * z().pow(3) / (z() * z() - QRatFunc(q(1))).pow(4);

  MultiDifferential w03(3);
  w03.add_term({PoleFactor::at(q(-1), 2), PoleFactor::at(q(-1), 2),
                PoleFactor::at(q(-1), 2)},
               q(1, 2));
  w03.add_term({PoleFactor::at(q(1), 2), PoleFactor::at(q(1), 2),
                PoleFactor::at(q(1), 2)},
               q(-1, 2));
  ok = ok && e.correlation(0, 3) == w03;

  QRatFunc num21 = QRatFunc(q(-21)) *
                   (z().pow(11) + QRatFunc(q(3)) * z().pow(9) + z().pow(7));
  return ok && e.correlation(2, 1).to_ratfunc() ==
                   num21 / (z() * z() - QRatFunc(q(1))).pow(10);
}

bool bernoulli_free_energies() {
  Engine e(weber_curve());
  if (e.free_energy(2).value_at_one != q(-1, 240)) return false;
  for (int g = 2; g <= 4; ++g) {
    FreeEnergy f = e.free_energy(g);
    FreeEnergy closed = free_energy_closed_form(g);
    if (f.value_at_one != closed.value_at_one) return false;
    if (f.lambda_exponent != 2 - 2 * g) return false;
  }
  return true;
}

bool quantization() {
  CurveModel airy = airy_curve();
  QuantumCurve a = quantize(airy, divisor_weights(airy));
  bool ok = a.q0.is_zero() && a.q1.is_zero() && a.r0 == nz("-z") &&
            a.r1.is_zero() && a.r2.is_zero();

  CurveModel weber = weber_curve();
  QuantumCurve w = quantize(weber, divisor_weights(weber));
  NuRat half_nu = NuRat(nu_param() / NuF(Rational(2)));
  return ok && w.q0.is_zero() && w.q1.is_zero() &&
         w.r0 == nz("1 - z^2/4") && w.r1 == NuRat() - half_nu &&
         w.r2.is_zero();
}

bool riccati_matches_correlations() {
  CurveModel c = weber_curve();
  Engine e(c);
  auto weights = divisor_weights(c);
  auto ex = riccati_expand(quantize(c, weights), c, +1, 3);
  for (int m = -1; m <= 3; ++m)
    if (ex.T(m) != t_hat(e, weights, m)) return false;
  return true;
}

bool voros_closed_forms() {
  CurveModel c = weber_curve();
  auto ex = riccati_expand(quantize(c, divisor_weights(c)), c, +1, 8);
  VorosSeries vs = voros_coefficients(ex, 8);
  for (int m = 1; m <= 8; ++m)
    if (vs.v[m - 1] != voros_closed_form(m)) return false;
  return true;
}

bool relation_suites() {
  Engine e(weber_curve());
  return verify_main_relation(e, 6).pass &&
         verify_weight_difference(e, 6).pass &&
         verify_lambda_difference(e, 6).pass;
}

bool variational_identities() {
  Engine e(weber_curve());
  if (e.correlation(2, 1).integrate_all_slots_0_to_inf() != q(1, 120))
    return false;
  return verify_variational(e, 2, 1) && verify_variational(e, 0, 3) &&
         verify_variational(e, 1, 2);
}

// symmetry, pole locations, zero residue, and reflection antisymmetry of
// every correlation differential with 2g+n <= 7
bool weber_tower_structure() {
  Engine e(weber_curve(), 7);
  CurveModel c = e.model();
  std::vector<Rational> samples = {q(2), q(3), q(5),  q(7),
                                   q(-4), q(9, 2), q(-6)};
  for (int g = 0; 2 * g + 1 <= 7; ++g)
    for (int n = (g == 0 ? 3 : 1); 2 * g + n <= 7; ++n) {
      const MultiDifferential& w = e.correlation(g, n);
      if (w.vars() != n || !w.is_symmetric()) return false;
      for (const auto& [key, coeff] : w.terms())
        for (const auto& f : key)
          if (f.diag || f.order < 2 || (f.pole != q(1) && f.pole != q(-1)))
            return false;
      std::vector<Rational> at(samples.begin(), samples.begin() + n);
      Rational straight = w.eval(at);
      Rational jac = c.sigma.derivative().eval(at[0]);
      at[0] = c.sigma.eval(at[0]);
      if (w.eval(at) * jac != Rational(0) - straight) return false;
    }
  return true;
}

// the points over x = infinity are ineffective, only z = 0 is effective, and
// summing residues over all ramification points (including the ineffective
// one) reproduces the recursion output
bool ineffective_points() {
  for (const CurveModel& c : {airy_curve(), bessel_curve()}) {
    if (!ram_at(c, Point(q(0))).effective) return false;
    if (ram_at(c, Point::infinity()).effective) return false;
    for (const auto& r : c.ramification)
      if (r.effective && r.location != Point(q(0))) return false;

    Engine e(c);
    Rational z0 = q(3);
    QRatFunc k = recursion_kernel(c, ram_at(c, Point(q(0))), z0);
    QRatFunc f = k * c.sigma.derivative() * (z() - c.sigma).pow(-2);
    if (residue_at(f, Point::infinity()) != q(0)) return false;
    if (residue_at(f, Point(q(0))) !=
        e.correlation(1, 1).to_ratfunc().eval(z0))
      return false;

    Rational a = q(5), b = q(7);
    QRatFunc cross =
        (z() - QRatFunc(a)).pow(-2) * (c.sigma - QRatFunc(b)).pow(-2) +
        (z() - QRatFunc(b)).pow(-2) * (c.sigma - QRatFunc(a)).pow(-2);
    QRatFunc f3 = k * c.sigma.derivative() * cross;
    if (residue_at(f3, Point::infinity()) != q(0)) return false;
    if (residue_at(f3, Point(q(0))) != e.correlation(0, 3).eval({z0, a, b}))
      return false;
  }
  return true;
}

bool same_model(const CurveModel& a, const CurveModel& b) {
  if (a.x != b.x || a.y != b.y || a.sigma != b.sigma) return false;
  if (a.ramification.size() != b.ramification.size()) return false;
  for (size_t i = 0; i < a.ramification.size(); ++i) {
    const RamPoint &ra = a.ramification[i], &rb = b.ramification[i];
    if (ra.location != rb.location || ra.effective != rb.effective)
      return false;
  }
  return true;
}

bool parser_round_trip() {
  if (!same_model(parse_curve("x = z + 1/z; y = (z - 1/z)/2;"),
                  weber_curve()))
    return false;
  if (!same_model(parse_curve("x = z^2; y = z;"), airy_curve())) return false;
  if (!same_model(parse_curve("x = z^2; y = 1/z;"), bessel_curve()))
    return false;

  // nodal cubic y^2 = x^3 + x^2, parametrized by the slope at the node
  try {
    parse_curve("x = z^2 - 1; y = z^3 - z;");
    return false;
  } catch (const CurveValidationError& e) {
    return e.assumption == "AQ2";
  }
}

}  // namespace

int main() {
  criterion("1: closed forms of W[1,1], W[2,1], W[0,3]", 1.0,
            closed_form_correlations);
  criterion("2: Bernoulli free energies up to genus 4", 120.0,
            bernoulli_free_energies);
  criterion("3: quantization of the Airy and Weber curves", 1.0,
            quantization);
  criterion("4: Riccati terms equal the correlation side, order -1..3", 60.0,
            riccati_matches_correlations);
  criterion("5: Voros coefficients in closed form, order 1..8", 120.0,
            voros_closed_forms);
  criterion("6: generating-series and difference relations to order 6", 120.0,
            relation_suites);
  criterion("7: variational identities", 30.0, variational_identities);
  criterion("8: structure of the correlation tower", 0.0, [] {
    return weber_tower_structure() && ineffective_points();
  });
  criterion("9: curve parser round trip and rejection", 0.0,
            parser_round_trip);
  return failures == 0 ? 0 : 1;
}
