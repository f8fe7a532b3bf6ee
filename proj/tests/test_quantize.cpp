#include <map>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "spectralrec/curve.hpp"
#include "spectralrec/errors.hpp"
#include "spectralrec/parser.hpp"
#include "spectralrec/quantize.hpp"

using namespace spectralrec;

namespace {

NuRat nz(const std::string& s) { return lift_to_nu(parse_expr_source(s)); }

NuRat nu_times(const std::string& s) { return NuRat(nu_param()) * nz(s); }

}  // namespace

TEST_CASE("descent to the base of the covering") {
  CurveModel weber = weber_curve();

  // x itself and a symmetric function of the sheets. The result is a
  // function of the base coordinate, written in the same variable.
  CHECK(descend_to_x(nz("z + 1/z"), weber) == nz("z"));
  CHECK(descend_to_x(nz("z^2 + 1/z^2"), weber) == nz("z^2 - 2"));
  CHECK(descend_to_x(nz("(z^2+1)^2/z^2"), weber) == nz("z^2"));

  // Coefficients in ν pass through untouched.
  NuRat f = nu_times("z^3 + 1/z^3") + nz("5");
  CHECK(descend_to_x(f, weber) == nu_times("z^3 - 3*z") + nz("5"));

  // Anti-invariant input is rejected, and the witness names the offender.
  CHECK_THROWS_WITH_AS(descend_to_x(nz("z"), weber),
                       doctest::Contains("not sigma-invariant"),
                       std::domain_error);
  CHECK_THROWS_AS(descend_to_x(nz("z - 1/z"), weber), std::domain_error);

  // On x = z² the invariants are the even functions.
  CurveModel airy = airy_curve();
  CHECK(descend_to_x(nz("z^4 + 3*z^2"), airy) == nz("z^2 + 3*z"));
  CHECK_THROWS_AS(descend_to_x(nz("z^3"), airy), std::domain_error);
}

TEST_CASE("divisor weights") {
  CurveModel weber = weber_curve();
  auto w = divisor_weights(weber);
  NuF nu = nu_param();
  NuF half(Rational(1, 2));

  REQUIRE(w.weights().size() == 2);
  CHECK(w.at(Point(Rational(0))) == (NuF(Rational(1)) - nu) * half);
  CHECK(w.at(Point::infinity()) == (NuF(Rational(1)) + nu) * half);
  CHECK(w.symbolic());

  auto w3 = w.substituted(weber, Rational(1, 3));
  CHECK_FALSE(w3.symbolic());
  CHECK(w3.at(Point(Rational(0))) == NuF(Rational(1, 3)));
  CHECK(w3.at(Point::infinity()) == NuF(Rational(2, 3)));

  // |B| = 1: the whole weight sits at the single point.
  auto wa = divisor_weights(airy_curve());
  REQUIRE(wa.weights().size() == 1);
  CHECK(wa.at(Point::infinity()) == NuF(Rational(1)));

  // Explicit assignments must cover exactly B and sum to one.
  CHECK_THROWS_AS(DivisorWeights(weber, {{Point(Rational(0)), NuF(Rational(1))},
                                         {Point::infinity(), NuF(Rational(1))}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DivisorWeights(weber, {{Point(Rational(0)), NuF(Rational(1))}}),
                  std::invalid_argument);
}

TEST_CASE("quantum curves of the built-in models") {
  NuF nu = nu_param();

  SUBCASE("Weber") {
    CurveModel c = weber_curve();
    auto qc = quantize(c, divisor_weights(c));
    CHECK(qc.q0 == NuRat());
    CHECK(qc.q1 == NuRat());
    CHECK(qc.r0 == nz("1 - z^2/4"));
    CHECK(qc.r1 == NuRat() - NuRat(nu) * NuRat(NuF(Rational(1, 2))));
    CHECK(qc.r2 == NuRat());

    auto q = sl_form(qc);
    CHECK(q[0] == nz("z^2/4 - 1"));
    CHECK(q[0] == lift_to_nu(c.q0));
    CHECK(q[1] == NuRat(nu) * NuRat(NuF(Rational(1, 2))));
    CHECK(q[2] == NuRat());
  }

  SUBCASE("Airy") {
    CurveModel c = airy_curve();
    auto qc = quantize(c, divisor_weights(c));
    CHECK(qc.q0 == NuRat());
    CHECK(qc.q1 == NuRat());
    CHECK(qc.r0 == NuRat() - nz("z"));  // -x as a function of the base
    CHECK(qc.r1 == NuRat());
    CHECK(qc.r2 == NuRat());

    auto q = sl_form(qc);
    CHECK(q[0] == nz("z"));
    CHECK(q[0] == lift_to_nu(c.q0));
    CHECK(q[1] == NuRat());
    CHECK(q[2] == NuRat());
  }

  SUBCASE("Bessel") {
    CurveModel c = bessel_curve();
    auto qc = quantize(c, divisor_weights(c));
    CHECK(qc.q1 == nz("1/z"));  // 1/x
    CHECK(qc.r0 == NuRat() - nz("1/z"));

    auto q = sl_form(qc);
    CHECK(q[0] == lift_to_nu(c.q0));
  }
}

TEST_CASE("weight dependence of the quantum curve") {
  CurveModel c = weber_curve();
  NuF nu = nu_param();
  NuF half(Rational(1, 2));

  // Swapping the two weights flips the sign of ν in every coefficient.
  DivisorWeights swapped(
      c, {{Point(Rational(0)), (NuF(Rational(1)) + nu) * half},
          {Point::infinity(), (NuF(Rational(1)) - nu) * half}});
  auto qc = quantize(c, swapped);
  CHECK(qc.q1 == NuRat());
  CHECK(qc.r1 == NuRat(nu) * NuRat(half));
  CHECK(qc.r2 == NuRat());

  // Numeric weights reproduce the symbolic answer at that value.
  auto qn = quantize(c, divisor_weights(c).substituted(c, Rational(3, 7)));
  auto qs = quantize(c, divisor_weights(c));
  CHECK(qn.r1 == NuRat(NuF(qs.r1.constant_value().eval(Rational(3, 7)))));
  CHECK(qn.r1 == NuRat(NuF(Rational(-3, 14))));
}
