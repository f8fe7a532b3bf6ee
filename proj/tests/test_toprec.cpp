#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "spectralrec/bernoulli.hpp"
#include "spectralrec/calculus.hpp"
#include "spectralrec/curve.hpp"
#include "spectralrec/errors.hpp"
#include "spectralrec/toprec.hpp"

using namespace spectralrec;

namespace {

QRatFunc z() { return QRatFunc::x(); }
Rational q(long n, long d = 1) { return Rational(n, d); }

const RamPoint& ram_at(const CurveModel& c, const Point& p) {
  for (const auto& r : c.ramification)
    if (r.location == p) return r;
  throw std::logic_error("no such ramification point");
}

// Body of the correlation differential at a rational sample, with the first
// slot reflected to the other sheet (including the dσ/dz Jacobian).
Rational reflected_eval(const CurveModel& c, const MultiDifferential& w,
                        std::vector<Rational> at) {
  Rational jac = c.sigma.derivative().eval(at[0]);
  at[0] = c.sigma.eval(at[0]);
  return w.eval(at) * jac;
}

}  // namespace

TEST_CASE("Bergman kernel") {
  MultiDifferential b = Engine::w02();
  CHECK(b.vars() == 2);
  CHECK(b.is_symmetric());
  CHECK(b.eval({q(5), q(2)}) == q(1, 9));

  // reflecting one slot through the Weber involution turns the second-kind
  // pole into the pullback of dx dx/(x-x)^2
  CurveModel c = weber_curve();
  for (auto [s, t] : {std::pair{q(2), q(3)}, {q(-5), q(7, 2)}}) {
    Rational lhs = b.eval({s, t}) + reflected_eval(c, b, {s, t});
    Rational rhs = c.xprime.eval(s) * c.xprime.eval(t) /
                   (c.x.eval(s) - c.x.eval(t)).pow(2);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("recursion kernel") {
  CurveModel weber = weber_curve();
  QRatFunc k = recursion_kernel(weber, ram_at(weber, Point(q(1))), q(3));
  // [1/(3-z) - 1/(3-1/z)] * z^3 / (2 (z^2-1)^2) at z = 2
  CHECK(k.eval(q(2)) == q(4, 15));
  // same expression whichever effective point is named
  QRatFunc k2 = recursion_kernel(weber, ram_at(weber, Point(q(-1))), q(3));
  CHECK(k == k2);

  // the pairing factor is odd under z -> sigma(z)
  QRatFunc pair = k * (weber.delta_dx * QRatFunc(q(2)));
  CHECK(pair.subs(weber.sigma) == QRatFunc() - pair);

  CurveModel airy = airy_curve();
  QRatFunc ka = recursion_kernel(airy, ram_at(airy, Point(q(0))), q(3));
  // [1/(3-z) - 1/(3+z)] / (8 z^2) = 1/(4 z (9 - z^2))
  CHECK(ka == (QRatFunc(q(4)) * z() * (QRatFunc(q(9)) - z() * z())).inv());
  CHECK_THROWS_AS(recursion_kernel(airy, ram_at(airy, Point::infinity()), q(3)),
                  std::invalid_argument);
}

TEST_CASE("first correlation functions match the closed forms") {
  Engine e(weber_curve());

  QRatFunc den11 = (z() * z() - QRatFunc(q(1))).pow(4);
  CHECK(e.correlation(1, 1).to_ratfunc() ==
        QRatFunc(q(-1)) * z().pow(3) / den11);

  MultiDifferential w03(3);
  w03.add_term({PoleFactor::at(q(-1), 2), PoleFactor::at(q(-1), 2),
                PoleFactor::at(q(-1), 2)},
               q(1, 2));
  w03.add_term({PoleFactor::at(q(1), 2), PoleFactor::at(q(1), 2),
                PoleFactor::at(q(1), 2)},
               q(-1, 2));
  CHECK(e.correlation(0, 3) == w03);

  QRatFunc num21 =
      QRatFunc(q(-21)) * (z().pow(11) + QRatFunc(q(3)) * z().pow(9) + z().pow(7));
  QRatFunc den21 = (z() * z() - QRatFunc(q(1))).pow(10);
  CHECK(e.correlation(2, 1).to_ratfunc() == num21 / den21);

  CHECK(e.w01() == (z() * z() - QRatFunc(q(1))).pow(2) /
                       (QRatFunc(q(2)) * z().pow(3)));
}

TEST_CASE("structural properties of the computed tower") {
  Engine e(weber_curve(), 7);
  CurveModel c = e.model();
  std::vector<Rational> samples = {q(2), q(3), q(5), q(7), q(-4), q(9, 2), q(-6)};
  for (int g = 0; 2 * g + 1 <= 7; ++g)
    for (int n = (g == 0 ? 3 : 1); 2 * g + n <= 7; ++n) {
      CAPTURE(g);
      CAPTURE(n);
      const MultiDifferential& w = e.correlation(g, n);
      CHECK(w.vars() == n);
      CHECK(w.is_symmetric());
      // poles only at the effective ramification points z = ±1, every slot
      // singular, no first-order part (zero residue)
      bool shape_ok = true;
      for (const auto& [key, coeff] : w.terms())
        for (const auto& f : key)
          shape_ok = shape_ok && !f.diag && f.order >= 2 &&
                     (f.pole == q(1) || f.pole == q(-1));
      CHECK(shape_ok);
      // reflection in the first slot flips the sign for 2g+n > 2
      std::vector<Rational> at(samples.begin(), samples.begin() + n);
      CHECK(reflected_eval(c, w, at) == Rational(0) - w.eval(at));
    }
}

TEST_CASE("free energies") {
  Engine e(weber_curve());
  for (int g = 2; g <= 4; ++g) {
    FreeEnergy f = e.free_energy(g);
    CHECK(f.g == g);
    CHECK(f.lambda_exponent == 2 - 2 * g);
    CHECK(f.restricted_sum_matches);
    CHECK(f.value_at_one ==
          bernoulli_number(2 * g) / Rational(2 * g * (2 * g - 2)));
  }
  CHECK(e.free_energy(2).value_at_one == q(-1, 240));
  CHECK(e.free_energy(3).value_at_one == q(1, 1008));
  CHECK(e.free_energy(4).value_at_one == q(-1, 1440));
  CHECK_THROWS_AS(e.free_energy(1), std::invalid_argument);

  // the primitive of y dx is only determined up to a constant; the residues
  // it gets paired with all vanish, so the choice cannot matter
  for (const auto& p : {Point(q(1)), Point(q(-1))}) {
    CHECK(residue_at(e.w01(), p) == q(0));
    CHECK(residue_at(e.correlation(2, 1).to_ratfunc(), p) == q(0));
    CHECK(residue_at(e.correlation(3, 1).to_ratfunc(), p) == q(0));
  }
}

TEST_CASE("Weber F0 and F1") {
  auto [f0, f1] = weber_low_genus(weber_curve());
  QRatFunc lam = QRatFunc::x();
  CHECK(f0.coeff(0) == lam * lam * QRatFunc(q(-3, 4)));
  CHECK(f0.coeff(1) == lam * lam * QRatFunc(q(1, 2)));
  CHECK(f1.coeff(0).is_zero());
  CHECK(f1.coeff(1) == QRatFunc(q(-1, 12)));

  LogPolynomial<Rational> df0 = f0.derivative();
  CHECK(df0.coeff(0) == QRatFunc() - lam);  // lambda log(lambda) - lambda
  CHECK(df0.coeff(1) == lam);
  LogPolynomial<Rational> ddf0 = df0.derivative();
  CHECK(ddf0.coeff(0).is_zero());  // second derivative is exactly log(lambda)
  CHECK(ddf0.coeff(1) == QRatFunc(q(1)));
  CHECK(f1.derivative() == LogPolynomial<Rational>(QRatFunc(q(-1, 12)) / lam));

  CHECK_THROWS_WITH_AS(weber_low_genus(airy_curve()),
                       "not available: general F0/F1 out of scope",
                       std::invalid_argument);
}

TEST_CASE("variational identities") {
  Engine e(weber_curve());
  CHECK(e.correlation(2, 1).integrate_all_slots_0_to_inf() == q(1, 120));
  CHECK(verify_variational(e, 2, 1));
  CHECK(verify_variational(e, 0, 3));
  CHECK(verify_variational(e, 1, 2));
  CHECK(verify_variational(e, 1, 1));
  CHECK(verify_variational(e, 0, 4));
  CHECK(verify_variational(e, 3, 1));
  CHECK(verify_variational(e, 2, 2));
  Engine airy(airy_curve());
  CHECK_THROWS_AS(verify_variational(airy, 1, 1), std::invalid_argument);
}

TEST_CASE("ineffective ramification points contribute nothing") {
  for (const CurveModel& c : {airy_curve(), bessel_curve()}) {
    CAPTURE(c.x.str());
    CHECK(ram_at(c, Point(q(0))).effective);
    CHECK(!ram_at(c, Point::infinity()).effective);

    Engine e(c);
    Rational z0 = q(3);
    // assemble the g=1, n=1 recursion integrand by hand and take residues
    // at both ramification points, including the ineffective one
    QRatFunc k = recursion_kernel(c, ram_at(c, Point(q(0))), z0);
    QRatFunc f =
        k * c.sigma.derivative() * (z() - c.sigma).pow(-2);
    CHECK(residue_at(f, Point::infinity()) == q(0));
    CHECK(residue_at(f, Point(q(0))) ==
          e.correlation(1, 1).to_ratfunc().eval(z0));

    // same for g=0, n=3 with the spectators sampled
    Rational a = q(5), b = q(7);
    QRatFunc cross =
        (z() - QRatFunc(a)).pow(-2) * (c.sigma - QRatFunc(b)).pow(-2) +
        (z() - QRatFunc(b)).pow(-2) * (c.sigma - QRatFunc(a)).pow(-2);
    QRatFunc f3 = k * c.sigma.derivative() * cross;
    CHECK(residue_at(f3, Point::infinity()) == q(0));
    CHECK(residue_at(f3, Point(q(0))) == e.correlation(0, 3).eval({z0, a, b}));

    // only z = 0 can carry poles of the computed tower
    bool at_origin = true;
    for (int g = 0; 2 * g + 1 <= 6; ++g)
      for (int n = (g == 0 ? 3 : 1); 2 * g + n <= 6; ++n)
        for (const auto& [key, coeff] : e.correlation(g, n).terms())
          for (const auto& fac : key) at_origin = at_origin && fac.pole == q(0);
    CHECK(at_origin);
  }

  // hand-derived closed forms for the first invariant of both curves
  Engine airy(airy_curve());
  CHECK(airy.correlation(1, 1).to_ratfunc() ==
        QRatFunc(q(-1, 16)) * z().pow(-4));
  Engine bessel(bessel_curve());
  CHECK(bessel.correlation(1, 1).to_ratfunc() ==
        QRatFunc(q(-1, 16)) * z().pow(-2));
}

TEST_CASE("scale covariance against a hand-built rescaled curve") {
  // x and y carry the scale sqrt(lambda) with lambda = 4; the invariants
  // pick up lambda^(2-2g-n) relative to the normalized curve
  CurveModel scaled = parse_curve("x = 2*(z + 1/z); y = z - 1/z;");
  Engine es(scaled);
  Engine e(weber_curve());
  CHECK(es.correlation(0, 3) == e.correlation(0, 3) * q(1, 4));
  CHECK(es.correlation(1, 1) == e.correlation(1, 1) * q(1, 4));
  CHECK(es.free_energy(2).value_at_one == q(1, 16) * e.free_energy(2).value_at_one);
}

TEST_CASE("cap and argument checking") {
  Engine e(weber_curve(), 5);
  CHECK(e.cap() == 5);
  CHECK_THROWS_AS(e.correlation(2, 2), ResourceCapExceeded);
  CHECK_THROWS_AS(e.correlation(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(e.correlation(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(e.correlation(-1, 3), std::invalid_argument);
  e.set_cap(6);
  CHECK(e.correlation(2, 2).is_symmetric());

  // preloaded values short-circuit the recursion
  Engine e2(weber_curve());
  MultiDifferential fake(1);
  fake.add_term({PoleFactor::at(q(1), 3)}, q(5));
  CHECK_THROWS_AS(e2.preload(1, 2, fake), std::invalid_argument);
  e2.preload(1, 1, fake);
  CHECK(e2.correlation(1, 1) == fake);
}
