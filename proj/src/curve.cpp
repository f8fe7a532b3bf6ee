#include "spectralrec/curve.hpp"

#include <algorithm>
#include <stdexcept>

#include "spectralrec/calculus.hpp"
#include "spectralrec/errors.hpp"
#include "spectralrec/parser.hpp"

namespace spectralrec {

namespace {

int map_degree(const QRatFunc& f) {
  return std::max(f.num().degree(), f.den().degree());
}

void sort_unique(std::vector<Point>& pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
}

// f rewritten in the w = 1/z chart.
QRatFunc at_infinity_chart(const QRatFunc& f) {
  return f.subs(QRatFunc(QPoly(Rational(1)), QPoly::x()));
}

}  // namespace

int order_at(const QRatFunc& f, const Point& pt) {
  if (f.is_zero()) throw std::domain_error("order_at: zero function");
  if (pt.is_infinity()) return -f.degree_at_infinity();
  const Rational& v = pt.value();
  return f.num().shifted(v).order_at_zero() -
         f.den().shifted(v).order_at_zero();
}

int differential_order_at(const QRatFunc& f, const Point& pt) {
  int base = order_at(f, pt);
  return pt.is_infinity() ? base - 2 : base;
}

Point value_at(const QRatFunc& f, const Point& pt) {
  if (f.is_zero()) return Point(Rational(0));
  if (pt.is_infinity()) {
    if (f.degree_at_infinity() > 0) return Point::infinity();
    return Point(f.limit_at_infinity());
  }
  if (f.is_pole(pt.value())) return Point::infinity();
  return Point(f.eval(pt.value()));
}

std::vector<Point> preimages(const QRatFunc& x, const Point& b) {
  std::vector<Point> out;
  QPoly e;
  if (b.is_infinity()) {
    e = x.den();
    if (x.num().degree() > x.den().degree()) out.push_back(Point::infinity());
  } else {
    e = x.num() - x.den() * b.value();
    if (e.degree() < map_degree(x)) out.push_back(Point::infinity());
  }
  if (!e.is_constant())
    for (const auto& [root, mult] : linear_factorization(e))
      out.push_back(Point(root));
  sort_unique(out);
  return out;
}

QRatFunc conjugate_map(const QRatFunc& x) {
  if (map_degree(x) != 2)
    throw CurveValidationError("AQ1", "degree of x(z) is not two");
  const QPoly &n = x.num(), &d = x.den();
  // N(z)D(w) - N(w)D(z) = (z-w)(a·zw + b(z+w) + c)
  Rational a = n.coeff(2) * d.coeff(1) - n.coeff(1) * d.coeff(2);
  Rational b = n.coeff(2) * d.coeff(0) - n.coeff(0) * d.coeff(2);
  Rational c = n.coeff(1) * d.coeff(0) - n.coeff(0) * d.coeff(1);
  if (a.is_zero() && b.is_zero())
    throw InternalInconsistency("conjugate_map: degenerate bilinear cofactor");
  return QRatFunc(QPoly({-c, -b}), QPoly({b, a}));
}

// --- function-field extension ---------------------------------------------

CoverExtension::CoverExtension(const QRatFunc& x) {
  if (map_degree(x) != 2)
    throw CurveValidationError("AQ1", "degree of x(z) is not two");
  const QPoly &n = x.num(), &d = x.den();
  // Minimal polynomial of z over Q(x): m2·z² + m1·z + m0 with
  // m_i(X) = n_i - d_i·X; the monic form is z² - s·z + p.
  QPoly m2({n.coeff(2), -d.coeff(2)});
  QPoly m1({n.coeff(1), -d.coeff(1)});
  QPoly m0({n.coeff(0), -d.coeff(0)});
  s_ = QRatFunc(-m1, m2);
  p_ = QRatFunc(m0, m2);
}

CoverElem CoverExtension::mul(const CoverElem& a, const CoverElem& b) const {
  // z² = s·z - p
  return {a.u * b.u - a.v * b.v * p_, a.u * b.v + a.v * b.u + a.v * b.v * s_};
}

CoverElem CoverExtension::conj(const CoverElem& e) const {
  return {e.u + e.v * s_, QRatFunc(0) - e.v};
}

QRatFunc CoverExtension::norm(const CoverElem& e) const {
  return e.u * e.u + e.u * e.v * s_ + e.v * e.v * p_;
}

CoverElem CoverExtension::reduce(const QRatFunc& f) const {
  auto reduce_poly = [this](const QPoly& p) {
    CoverElem acc{QRatFunc(0), QRatFunc(0)};
    for (int i = p.degree(); i >= 0; --i) {
      acc = mul(acc, CoverElem{QRatFunc(0), QRatFunc(1)});
      acc.u = acc.u + QRatFunc(p.coeff(i));
    }
    return acc;
  };
  CoverElem a = reduce_poly(f.num());
  CoverElem b = reduce_poly(f.den());
  QRatFunc nb = norm(b);
  if (nb.is_zero())
    throw InternalInconsistency("CoverExtension: denominator norm vanishes");
  CoverElem r = mul(a, conj(b));
  return {r.u / nb, r.v / nb};
}

// --- index -----------------------------------------------------------------

namespace {

QRatFunc potential_q0(const QPoly& P0, const QPoly& P1, const QPoly& P2) {
  QRatFunc r1(P1, P0), r2(P2, P0);
  QRatFunc q0 = r1 * r1 * QRatFunc(Rational(1, 4)) - r2;
  if (q0.is_zero())
    throw CurveValidationError("A1", "discriminant of P in y vanishes");
  return q0;
}

int index_of(const QRatFunc& q0, const Point& x0) {
  if (!x0.is_infinity()) return order_at(q0, x0);
  QRatFunc qinf = at_infinity_chart(q0) / QRatFunc(QPoly::x()).pow(4);
  return order_at(qinf, Point(Rational(0)));
}

}  // namespace

int index_rho(const QPoly& P0, const QPoly& P1, const QPoly& P2,
              const Point& x0) {
  return index_of(potential_q0(P0, P1, P2), x0);
}

// --- model construction -----------------------------------------------------

namespace {

std::vector<Point> sigma_fixed_points(const QRatFunc& sigma) {
  // sigma = (n1·z + n0)/(d1·z + d0); fixed points solve d1·z² + (d0-n1)z - n0.
  const QPoly &n = sigma.num(), &d = sigma.den();
  QPoly fp({Rational(0) - n.coeff(0), d.coeff(0) - n.coeff(1), d.coeff(1)});
  std::vector<Point> out;
  if (fp.degree() < 2) out.push_back(Point::infinity());
  if (!fp.is_constant()) {
    std::vector<std::pair<Rational, int>> roots;
    try {
      roots = linear_factorization(fp);
    } catch (const NonSplitDenominator&) {
      throw NonSplitDenominator(
          "ramification points of x(z) are not rational");
    }
    for (const auto& [r, mult] : roots) out.push_back(Point(r));
  }
  sort_unique(out);
  if (out.size() != 2)
    throw InternalInconsistency("conjugate map does not have two fixed points");
  return out;
}

void check_nondegenerate_differentials(const QRatFunc& x, const QRatFunc& y) {
  QRatFunc xp = x.derivative(), yp = y.derivative();
  QPoly g = gcd(xp.num(), yp.num());
  if (!g.is_constant()) {
    std::string where = "a common zero of " + g.str("z");
    auto roots = rational_roots_squarefree(squarefree_decomposition(g)[0].first);
    throw CurveValidationError(
        "Def 2.2", "dx and dy vanish simultaneously at " +
                       (roots.empty() ? where : "z = " + roots[0].str()));
  }
  if (differential_order_at(xp, Point::infinity()) > 0 &&
      differential_order_at(yp, Point::infinity()) > 0)
    throw CurveValidationError("Def 2.2",
                               "dx and dy vanish simultaneously at z = inf");
}

std::vector<RamPoint> classify(const QRatFunc& x, const QRatFunc& sigma,
                               const QRatFunc& delta_dx) {
  std::vector<RamPoint> out;
  for (const Point& r : sigma_fixed_points(sigma)) {
    bool pole = r.is_infinity() ? x.degree_at_infinity() > 0
                                : order_at(x, r) < 0;
    int ord = differential_order_at(delta_dx, r);
    out.push_back({r, pole ? RamKind::kDoublePoleOfX : RamKind::kZeroOfDx,
                   ord >= 0, ord});
  }
  return out;
}

void check_a2(const QRatFunc& x, const QRatFunc& y,
              const std::vector<RamPoint>& ram) {
  QRatFunc Y = QRatFunc(0) - x * x * y;
  for (const RamPoint& r : ram) {
    if (r.kind != RamKind::kDoublePoleOfX) continue;
    QRatFunc local =
        r.location.is_infinity() ? at_infinity_chart(Y) : Y;
    Point at = r.location.is_infinity() ? Point(Rational(0)) : r.location;
    if (order_at(local, at) < 0) continue;  // Y has a pole: nothing to check
    QRatFunc centered = local - QRatFunc(local.eval(at.value()));
    if (centered.is_zero() || order_at(centered, at) != 1)
      throw CurveValidationError(
          "A2", "dY vanishes at the ramification point z = " +
                    r.location.str());
  }
}

void check_a4(const QRatFunc& x, const std::vector<RamPoint>& ram) {
  if (value_at(x, ram[0].location) == value_at(x, ram[1].location))
    throw CurveValidationError("A4", "the two branch points coincide");
}

void check_aq2(const QRatFunc& delta_dx, const std::vector<RamPoint>& ram) {
  QPoly w = delta_dx.num();
  bool inf_in_R = false;
  for (const RamPoint& r : ram) {
    if (r.location.is_infinity()) {
      inf_in_R = true;
      continue;
    }
    const Rational& v = r.location.value();
    QPoly lin({Rational(0) - v, Rational(1)});
    while (!w.is_constant() && w.eval(v).is_zero()) w = w / lin;
  }
  if (!w.is_constant()) {
    auto roots = rational_roots_squarefree(squarefree_decomposition(w)[0].first);
    std::string witness =
        roots.empty() ? "a zero of " + w.str("z") : "z = " + roots[0].str();
    throw CurveValidationError("AQ2",
                               "Δ·dx vanishes off R (witness " + witness + ")");
  }
  if (!inf_in_R && differential_order_at(delta_dx, Point::infinity()) > 0)
    throw CurveValidationError("AQ2", "Δ·dx vanishes off R (witness z = inf)");
}

std::vector<Point> pole_set_of_differential(const QRatFunc& f) {
  std::vector<Point> out;
  for (const auto& [r, mult] : linear_factorization(f.den()))
    out.push_back(Point(r));
  if (differential_order_at(f, Point::infinity()) < 0)
    out.push_back(Point::infinity());
  sort_unique(out);
  return out;
}

SingularData build_singular_data(const CurveModel& m) {
  SingularData out;

  std::vector<Point> table_points;
  for (const auto& [r, mult] : linear_factorization(m.q0.den()))
    table_points.push_back(Point(r));
  for (const auto& [factor, mult] : squarefree_decomposition(m.q0.num()))
    for (const Rational& r : rational_roots_squarefree(factor))
      table_points.push_back(Point(r));
  table_points.push_back(Point::infinity());
  sort_unique(table_points);

  for (const Point& b : table_points) {
    int rho = index_of(m.q0, b);
    out.rho.emplace_back(b, rho);
    if (rho <= -2) out.sing.push_back(b);
    if (rho == -2) out.sing2.push_back(b);
  }

  for (const Point& b : out.sing)
    for (const Point& z : preimages(m.x, b)) out.B.push_back(z);
  for (const Point& b : out.sing2)
    for (const Point& z : preimages(m.x, b)) out.B1.push_back(z);
  sort_unique(out.B);
  sort_unique(out.B1);

  // B must coincide with the pole set of Δ·dx, B₁ with its simple poles.
  if (out.B != pole_set_of_differential(m.delta_dx))
    throw InternalInconsistency("B does not match the pole set of Δ·dx");
  std::vector<Point> simple;
  for (const Point& b : out.B)
    if (differential_order_at(m.delta_dx, b) == -1) simple.push_back(b);
  if (out.B1 != simple)
    throw InternalInconsistency("B₁ does not match the simple poles of Δ·dx");
  for (const RamPoint& r : m.ramification)
    if (std::find(out.B1.begin(), out.B1.end(), r.location) != out.B1.end())
      throw InternalInconsistency("Sing₂ at a ramification point");

  for (const Point& beta : out.B1) {
    Rational c = residue_at(m.delta_dx, beta);
    if (c.is_zero())
      throw InternalInconsistency("vanishing residue of Δ·dx on B₁");
    out.c_beta.emplace_back(beta, c);
  }
  // Residues at conjugate points must be opposite.
  for (const auto& [beta, c] : out.c_beta) {
    Point image = beta.is_infinity()
                      ? value_at(m.sigma, Point::infinity())
                      : value_at(m.sigma, beta);
    for (const auto& [other, c2] : out.c_beta)
      if (other == image && !(c2 == Rational(0) - c))
        throw InternalInconsistency("residues on B₁ not antisymmetric");
  }
  return out;
}

}  // namespace

std::vector<Point> CurveModel::ram_points() const {
  std::vector<Point> out;
  for (const auto& r : ramification) out.push_back(r.location);
  return out;
}

std::vector<Point> CurveModel::effective_points() const {
  std::vector<Point> out;
  for (const auto& r : ramification)
    if (r.effective) out.push_back(r.location);
  return out;
}

CurveModel make_curve(const QRatFunc& x, const QRatFunc& y, BuiltinTag tag) {
  if (x.is_constant() || y.is_constant())
    throw CurveValidationError("A1", "x(z) and y(z) must be non-constant");
  if (map_degree(x) != 2)
    throw CurveValidationError("AQ1", "degree of x(z) is not two");

  CurveModel m;
  m.x = x;
  m.y = y;
  m.tag = tag;
  m.sigma = conjugate_map(x);

  QRatFunc z = QRatFunc::x();
  if (m.sigma.subs(m.sigma) != z || x.subs(m.sigma) != x)
    throw InternalInconsistency("conjugate map fails its defining relations");

  // Decompose y over Q(x): the v-part is what distinguishes the two sheets.
  CoverExtension ext(x);
  CoverElem ye = ext.reduce(y);
  if (ye.v.is_zero())
    throw CurveValidationError(
        "A1", "y(z) is a rational function of x(z); the function field "
              "degenerates");

  // P(x,y): the monic quadratic with roots y and y∘σ, denominators cleared.
  QRatFunc t1 = ye.u + ye.u + ye.v * ext.sheet_sum();
  QRatFunc t2 = ext.norm(ye);
  QPoly g = gcd(t1.den(), t2.den());
  QPoly common = (t1.den() * t2.den()) / g;
  m.p0 = common;
  m.p1 = -(t1.num() * (common / t1.den()));
  m.p2 = t2.num() * (common / t2.den());
  QPoly content = gcd(gcd(m.p0, m.p1), m.p2);
  if (!content.is_one()) {
    m.p0 = m.p0 / content;
    m.p1 = m.p1 / content;
    m.p2 = m.p2 / content;
  }
  Rational lc = m.p0.lead();
  m.p0 = m.p0 / lc;
  m.p1 = m.p1 / lc;
  m.p2 = m.p2 / lc;
  m.q0 = potential_q0(m.p0, m.p1, m.p2);

  m.xprime = x.derivative();
  m.delta = y - y.subs(m.sigma);
  m.delta_dx = m.delta * m.xprime;
  if (m.delta.is_zero())
    throw InternalInconsistency("Δ vanishes identically on a valid cover");

  // Sanity: 4·Q0(x(z)) must equal Δ(z)².
  if (m.q0.subs(x) * QRatFunc(Rational(4)) != m.delta * m.delta)
    throw InternalInconsistency("Q0 does not match the sheet discriminant");

  check_nondegenerate_differentials(x, y);
  m.ramification = classify(x, m.sigma, m.delta_dx);
  check_a4(x, m.ramification);
  check_a2(x, y, m.ramification);
  check_aq2(m.delta_dx, m.ramification);
  m.singular = build_singular_data(m);
  return m;
}

CurveModel parse_curve(const std::string& text) {
  ParsedCurve pc = parse_curve_source(text);
  return make_curve(pc.x, pc.y);
}

CurveModel weber_curve() {
  QRatFunc z = QRatFunc::x();
  return make_curve(z + z.inv(), (z - z.inv()) * QRatFunc(Rational(1, 2)),
                    BuiltinTag::kWeber);
}

CurveModel airy_curve() {
  QRatFunc z = QRatFunc::x();
  return make_curve(z * z, z, BuiltinTag::kAiry);
}

CurveModel bessel_curve() {
  QRatFunc z = QRatFunc::x();
  return make_curve(z * z, z.inv(), BuiltinTag::kBessel);
}

CurveModel builtin_curve(const std::string& name) {
  if (name == "weber") return weber_curve();
  if (name == "airy") return airy_curve();
  if (name == "bessel") return bessel_curve();
  throw std::invalid_argument("unknown builtin curve: " + name);
}

}  // namespace spectralrec
