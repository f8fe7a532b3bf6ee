#include "spectralrec/serialize.hpp"

#include <stdexcept>

namespace spectralrec {

namespace {

template <class K, class CoeffToJson>
Json poly_json(const Polynomial<K>& p, CoeffToJson&& enc) {
  Json j = Json::object();
  for (int e = 0; e <= p.degree(); ++e)
    if (!p.coeff(e).is_zero()) j[std::to_string(e)] = enc(p.coeff(e));
  return j;
}

template <class K, class CoeffFromJson>
Polynomial<K> poly_from(const Json& j, CoeffFromJson&& dec) {
  int top = -1;
  for (auto it = j.begin(); it != j.end(); ++it)
    top = std::max(top, std::stoi(it.key()));
  std::vector<K> c(top + 1, K(0));
  for (auto it = j.begin(); it != j.end(); ++it)
    c[std::stoi(it.key())] = dec(it.value());
  return Polynomial<K>(std::move(c));
}

std::string with_nu(std::string s) {
  // nested coefficients print their variable as "t"; the weight parameter
  // deserves its own name
  std::string out;
  for (char ch : s) {
    if (ch == 't')
      out += "nu";
    else
      out += ch;
  }
  return out;
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::kJson;
  if (name == "text") return Format::kText;
  if (name == "latex") return Format::kLatex;
  throw std::invalid_argument("unknown format '" + name + "'");
}

Json to_json(const Rational& v) { return v.str(); }

Rational rational_from_json(const Json& j) {
  return Rational::parse(j.get<std::string>());
}

Json to_json(const QRatFunc& f) {
  return Json{{"num", poly_json(f.num(), [](const Rational& c) { return to_json(c); })},
              {"den", poly_json(f.den(), [](const Rational& c) { return to_json(c); })}};
}

QRatFunc ratfunc_from_json(const Json& j) {
  auto dec = [](const Json& v) { return rational_from_json(v); };
  return QRatFunc(poly_from<Rational>(j.at("num"), dec),
                  poly_from<Rational>(j.at("den"), dec));
}

Json to_json(const NuRat& f) {
  auto enc = [](const NuF& c) { return to_json(c); };
  return Json{{"num", poly_json(f.num(), enc)},
              {"den", poly_json(f.den(), enc)}};
}

NuRat nurat_from_json(const Json& j) {
  auto dec = [](const Json& v) { return ratfunc_from_json(v); };
  return NuRat(poly_from<NuF>(j.at("num"), dec),
               poly_from<NuF>(j.at("den"), dec));
}

Json to_json(const MultiDifferential& w) {
  Json vars = Json::array();
  for (int i = 0; i < w.vars(); ++i) vars.push_back("z" + std::to_string(i));
  Json terms = Json::array();
  for (const auto& [key, coeff] : w.terms()) {
    Json factors = Json::array();
    for (int i = 0; i < (int)key.size(); ++i) {
      const PoleFactor& pf = key[i];
      if (pf.order == 0) continue;
      Json f{{"slot", i}, {"order", pf.order}};
      if (pf.diag)
        f["var"] = pf.var;
      else
        f["pole"] = to_json(pf.pole);
      factors.push_back(std::move(f));
    }
    terms.push_back(Json{{"coeff", to_json(coeff)}, {"factors", factors}});
  }
  return Json{{"vars", vars}, {"terms", terms}};
}

MultiDifferential multidiff_from_json(const Json& j) {
  int n = (int)j.at("vars").size();
  MultiDifferential w(n);
  for (const auto& t : j.at("terms")) {
    MultiDifferential::TermKey key(n);
    for (const auto& f : t.at("factors")) {
      int slot = f.at("slot").get<int>();
      int order = f.at("order").get<int>();
      if (f.contains("var"))
        key.at(slot) = PoleFactor::at_var(f.at("var").get<int>(), order);
      else
        key.at(slot) = PoleFactor::at(rational_from_json(f.at("pole")), order);
    }
    w.add_term(std::move(key), rational_from_json(t.at("coeff")));
  }
  return w;
}

Json to_json(const QuantumCurve& qc) {
  return Json{{"q0", to_json(qc.q0)},
              {"q1", to_json(qc.q1)},
              {"r0", to_json(qc.r0)},
              {"r1", to_json(qc.r1)},
              {"r2", to_json(qc.r2)}};
}

QuantumCurve quantum_curve_from_json(const Json& j) {
  return QuantumCurve{nurat_from_json(j.at("q0")), nurat_from_json(j.at("q1")),
                      nurat_from_json(j.at("r0")), nurat_from_json(j.at("r1")),
                      nurat_from_json(j.at("r2"))};
}

Json to_json(const FreeEnergy& f) {
  return Json{{"g", f.g},
              {"value", to_json(f.value_at_one)},
              {"lambda_exponent", f.lambda_exponent},
              {"restricted_sum_matches", f.restricted_sum_matches}};
}

FreeEnergy free_energy_from_json(const Json& j) {
  return FreeEnergy{j.at("g").get<int>(), rational_from_json(j.at("value")),
                    j.at("lambda_exponent").get<int>(),
                    j.at("restricted_sum_matches").get<bool>()};
}

namespace {

Json log_poly_json(const LogPolynomial<NuF>& p) {
  Json j = Json::array();
  for (int k = 0; k <= p.log_degree(); ++k) j.push_back(to_json(p.coeff(k)));
  return j;
}

LogPolynomial<NuF> log_poly_from_json(const Json& j) {
  LogPolynomial<NuF> p;
  for (int k = 0; k < (int)j.size(); ++k)
    p = p + LogPolynomial<NuF>::log_term(nurat_from_json(j[k]), k);
  return p;
}

}  // namespace

Json to_json(const VorosSeries& vs) {
  Json v = Json::array();
  for (const auto& c : vs.v) v.push_back(to_json(c));
  Json j{{"order", vs.order}, {"v", v}};
  if (vs.has_head)
    j["head"] = Json{{"-1", log_poly_json(vs.head_m1)},
                     {"0", log_poly_json(vs.head_0)}};
  return j;
}

VorosSeries voros_from_json(const Json& j) {
  VorosSeries vs;
  vs.order = j.at("order").get<int>();
  for (const auto& c : j.at("v")) vs.v.push_back(ratfunc_from_json(c));
  if (j.contains("head")) {
    vs.has_head = true;
    vs.head_m1 = log_poly_from_json(j.at("head").at("-1"));
    vs.head_0 = log_poly_from_json(j.at("head").at("0"));
  }
  return vs;
}

std::string text_of(const QRatFunc& f, const std::string& var) {
  return f.str(var);
}

std::string text_of(const NuRat& f, const std::string& var) {
  return with_nu(f.str(var));
}

std::string text_of(const MultiDifferential& w) {
  if (w.is_zero()) return "0";
  if (w.vars() == 1) return text_of(w.to_ratfunc());
  std::string out;
  for (const auto& [key, coeff] : w.terms()) {
    if (!out.empty()) out += " + ";
    out += "(" + coeff.str() + ")";
    for (int i = 0; i < (int)key.size(); ++i) {
      const PoleFactor& pf = key[i];
      if (pf.order == 0) continue;
      std::string zi = "z" + std::to_string(i);
      std::string base =
          pf.diag ? zi + " - z" + std::to_string(pf.var)
                  : zi + (pf.pole.str()[0] == '-'
                              ? " + " + (Rational(0) - pf.pole).str()
                              : " - " + pf.pole.str());
      out += "/(" + base + ")^" + std::to_string(pf.order);
    }
  }
  return out;
}

std::string latex_of(const QRatFunc& f, const std::string& var) {
  if (f.den().is_one()) return f.num().str(var);
  return "\\frac{" + f.num().str(var) + "}{" + f.den().str(var) + "}";
}

std::string latex_of(const NuRat& f, const std::string& var) {
  if (f.den().is_one()) return with_nu(f.num().str(var));
  return "\\frac{" + with_nu(f.num().str(var)) + "}{" +
         with_nu(f.den().str(var)) + "}";
}

std::string lambda_power(int exponent) {
  return "λ^{" + std::to_string(exponent) + "}";
}

}  // namespace spectralrec
