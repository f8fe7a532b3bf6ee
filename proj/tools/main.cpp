#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "spectralrec/cache.hpp"
#include "spectralrec/errors.hpp"
#include "spectralrec/parser.hpp"
#include "spectralrec/serialize.hpp"
#include "spectralrec/voros.hpp"
#include "spectralrec/wkb.hpp"

using namespace spectralrec;

namespace {

struct Job {
  std::string curve = "weber";
  std::string nu = "symbolic";
  std::string format = "text";
  int gmax = 6;
  int nmax = 7;
  int M = 6;
  int cap_override = 0;
};

CurveModel load_curve(const std::string& selector) {
  if (selector == "weber") return weber_curve();
  if (selector == "airy") return airy_curve();
  if (selector == "bessel") return bessel_curve();
  std::ifstream in(selector);
  if (!in) throw std::invalid_argument("cannot open curve file " + selector);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_curve(text.str());
}

Engine make_engine(const Job& job) {
  Engine e(load_curve(job.curve), job.cap_override > 0 ? job.cap_override : 9);
  if (const char* dir = std::getenv("SPECTRALREC_CACHE_DIR"))
    load_engine_cache(e, dir);
  return e;
}

void persist(Engine& e) {
  if (const char* dir = std::getenv("SPECTRALREC_CACHE_DIR"))
    save_engine_cache(e, dir);
}

DivisorWeights job_weights(const Job& job, const CurveModel& curve) {
  auto w = divisor_weights(curve);
  if (job.nu == "symbolic") return w;
  return w.substituted(curve, Rational::parse(job.nu));
}

std::string scale_note(int lambda_exponent) {
  return "  (λ=1; scale by " + lambda_power(lambda_exponent) + ")";
}

void emit(const Json& j, const std::string& text) {
  static const bool json = false;
  (void)json;
  std::cout << text << "\n";
  (void)j;
}

int cmd_wgn(const Job& job, int g, int n) {
  if (g < 0 || n < 1 || g > job.gmax || n > job.nmax)
    throw std::invalid_argument("requested (g,n) outside the configured bounds");
  Engine e = make_engine(job);
  Format f = parse_format(job.format);
  int exponent = 2 - 2 * g - n;

  std::string expr;
  Json j;
  if (g == 0 && n == 1) {
    QRatFunc w = e.w01();
    expr = f == Format::kLatex ? latex_of(w) : text_of(w);
    j = Json{{"g", g}, {"n", n}, {"expression", to_json(w)}};
  } else {
    const MultiDifferential& w =
        (g == 0 && n == 2) ? Engine::w02() : e.correlation(g, n);
    if (f == Format::kLatex && n == 1)
      expr = latex_of(w.to_ratfunc());
    else
      expr = text_of(w);
    j = Json{{"g", g}, {"n", n}, {"differential", to_json(w)}};
    persist(e);
  }
  j["lambda_exponent"] = exponent;

  if (f == Format::kJson) {
    std::cout << j.dump() << "\n";
    return 0;
  }
  std::string dz = " dz";
  if (n > 1) {
    dz = "";
    for (int i = 0; i < n; ++i) dz += " dz" + std::to_string(i);
  }
  std::cout << "W[" << g << "," << n << "] = " << expr << dz
            << scale_note(exponent) << "\n";
  return 0;
}

int cmd_free_energy(const Job& job, int g) {
  Engine e = make_engine(job);
  FreeEnergy f = e.free_energy(g);
  persist(e);
  if (parse_format(job.format) == Format::kJson) {
    std::cout << to_json(f).dump() << "\n";
    return 0;
  }
  std::cout << "F[" << g << "] = " << f.value_at_one.str() << " * "
            << lambda_power(f.lambda_exponent) << "\n";
  return 0;
}

int cmd_quantize(const Job& job) {
  CurveModel curve = load_curve(job.curve);
  QuantumCurve qc = quantize(curve, job_weights(job, curve));
  auto q = sl_form(qc);
  if (parse_format(job.format) == Format::kJson) {
    Json j = to_json(qc);
    j["sl_form"] = Json{{"Q0", to_json(q[0])}, {"Q1", to_json(q[1])},
                        {"Q2", to_json(q[2])}};
    std::cout << j.dump() << "\n";
    return 0;
  }
  bool latex = parse_format(job.format) == Format::kLatex;
  auto render = [&](const NuRat& v) {
    return latex ? latex_of(v) : text_of(v);
  };
  std::cout << "operator: ħ²d²/dx² + (q0 + ħ·q1)·ħ d/dx + (r0 + ħ·r1 + ħ²·r2)"
            << "  (λ=1)\n";
  std::cout << "q0 = " << render(qc.q0) << "\nq1 = " << render(qc.q1)
            << "\nr0 = " << render(qc.r0) << "\nr1 = " << render(qc.r1)
            << "\nr2 = " << render(qc.r2) << "\n";
  std::cout << "Schrödinger form ħ²d²/dx² − (Q0 + ħ·Q1 + ħ²·Q2):\n";
  std::cout << "Q0 = " << render(q[0]) << "\nQ1 = " << render(q[1])
            << "\nQ2 = " << render(q[2]) << "\n";
  return 0;
}

int cmd_wkb(const Job& job) {
  CurveModel curve = load_curve(job.curve);
  auto qc = quantize(curve, job_weights(job, curve));
  auto ex = riccati_expand(qc, curve, +1, job.M);
  if (parse_format(job.format) == Format::kJson) {
    Json terms = Json::object();
    for (int m = -1; m <= job.M; ++m)
      terms[std::to_string(m)] = to_json(ex.T(m));
    std::cout << Json{{"order", job.M}, {"T", terms}}.dump() << "\n";
    return 0;
  }
  bool latex = parse_format(job.format) == Format::kLatex;
  for (int m = -1; m <= job.M; ++m)
    std::cout << "T[" << m << "] = "
              << (latex ? latex_of(ex.T(m), "z") : text_of(ex.T(m), "z"))
              << "\n";
  return 0;
}

int cmd_voros(const Job& job) {
  CurveModel curve = load_curve(job.curve);
  auto qc = quantize(curve, job_weights(job, curve));
  auto vs = regularized_voros(
      voros_coefficients(riccati_expand(qc, curve, +1, job.M), job.M));
  if (parse_format(job.format) == Format::kJson) {
    std::cout << to_json(vs).dump() << "\n";
    return 0;
  }
  std::cout << "V[-1] = λ·log(λ) − λ\nV[0] = −(ν/2)·log(λ)\n";
  for (int m = 1; m <= vs.order; ++m) {
    const NuF& v = vs.v[m - 1];
    std::string s = v.is_constant() ? v.constant_value().str()
                                    : "(" + text_of(v, "nu") + ")";
    std::cout << "V[" << m << "] = " << s << " * " << lambda_power(-m) << "\n";
  }
  return 0;
}

int cmd_verify(const Job& job, const std::string& suite) {
  int failures = 0;
  auto line = [&](const std::string& name, bool ok, const std::string& note) {
    std::cout << (ok ? "pass" : "FAIL") << "  " << name;
    if (!note.empty()) std::cout << "  " << note;
    std::cout << "\n";
    if (!ok) ++failures;
  };
  auto report_line = [&](const std::string& name, const RelationReport& r) {
    line(name, r.pass, r.detail);
  };

  if (suite == "thm3.1") {
    CurveModel curve = load_curve(job.curve);
    Engine e = make_engine(job);
    auto w = divisor_weights(curve);
    auto ex = riccati_expand(quantize(curve, w), curve, +1, 3);
    for (int m = -1; m <= 3; ++m)
      line("T[" + std::to_string(m) + "] = T̂[" + std::to_string(m) + "]",
           ex.T(m) == t_hat(e, w, m), "");
  } else if (suite == "thm4.2") {
    Engine e = make_engine(job);
    report_line("V vs free-energy generating series (order ħ^" +
                    std::to_string(job.M) + ")",
                verify_main_relation(e, job.M));
    persist(e);
  } else if (suite == "lemma4.3") {
    Engine e = make_engine(job);
    report_line("weight-shift difference equation",
                verify_weight_difference(e, job.M));
  } else if (suite == "thm4.4") {
    Engine e = make_engine(job);
    report_line("three-term relation in λ", verify_lambda_difference(e, job.M));
    persist(e);
  } else if (suite == "thm4.5") {
    Engine e = make_engine(job);
    for (int g = 2; 2 * g - 2 <= job.M; ++g)
      line("F[" + std::to_string(g) + "] Bernoulli closed form",
           e.free_energy(g).value_at_one ==
               free_energy_closed_form(g).value_at_one,
           "");
    persist(e);
  } else if (suite == "thm4.6") {
    CurveModel curve = load_curve(job.curve);
    auto vs = voros_coefficients(
        riccati_expand(quantize(curve, divisor_weights(curve)), curve, +1,
                       job.M),
        job.M);
    for (int m = 1; m <= job.M; ++m)
      line("V[" + std::to_string(m) + "] Bernoulli closed form",
           vs.v[m - 1] == voros_closed_form(m), "");
  } else if (suite == "variational") {
    Engine e = make_engine(job);
    for (auto [g, n] : {std::pair{2, 1}, {0, 3}, {1, 2}})
      line("variation of F[" + std::to_string(g) + "] in " +
               std::to_string(n) + " slot(s)",
           verify_variational(e, g, n), "");
    persist(e);
  } else if (suite == "properties") {
    Engine e = make_engine(job);
    for (const auto& r : e.model().ramification)
      line("ramification point " + r.location.str() + " " +
               (r.effective ? "effective" : "ineffective"),
           true, "");
    int cap = std::min(e.cap(), 6);
    for (int g = 0; 2 * g + 1 <= cap; ++g)
      for (int n = std::max(1, 3 - 2 * g); 2 * g + n <= cap; ++n) {
        const auto& w = e.correlation(g, n);
        bool shape = w.is_symmetric();
        for (const auto& [key, coeff] : w.terms())
          for (const auto& pf : key) {
            if (pf.order == 0) continue;
            bool at_effective = false;
            for (const auto& r : e.model().ramification)
              if (r.effective && !r.location.is_infinity() &&
                  r.location.value() == pf.pole)
                at_effective = true;
            shape = shape && at_effective && pf.order >= 2 && !pf.diag;
          }
        line("W[" + std::to_string(g) + "," + std::to_string(n) +
                 "] symmetry and pole structure",
             shape, "");
      }
    persist(e);
  } else {
    throw std::invalid_argument("unknown verify suite '" + suite + "'");
  }
  return failures == 0 ? 0 : 1;
}

int run(int argc, char** argv) {
  CLI::App app{"exact topological recursion, quantization, and WKB data"};
  app.require_subcommand(1);
  Job job;
  int g = 0, n = 1;
  std::string suite;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--curve", job.curve, "weber | airy | bessel | file path");
    cmd->add_option("--format", job.format, "json | text | latex");
    cmd->add_option("--nu", job.nu, "rational value or 'symbolic'");
    cmd->add_option("-M,--order", job.M, "expansion order");
    cmd->add_option("--gmax", job.gmax, "largest genus accepted");
    cmd->add_option("--nmax", job.nmax, "largest slot count accepted");
    cmd->add_option("--cap-override", job.cap_override,
                    "raise the 2g+n resource cap");
  };

  auto* wgn = app.add_subcommand("wgn", "one correlation differential");
  wgn->add_option("-g", g)->required();
  wgn->add_option("-n", n)->required();
  add_common(wgn);

  auto* fe = app.add_subcommand("free-energy", "one free energy");
  fe->add_option("-g", g)->required();
  add_common(fe);

  add_common(app.add_subcommand("quantize", "the quantum curve"));
  add_common(app.add_subcommand("wkb", "Riccati transport terms"));
  add_common(app.add_subcommand("voros", "Voros coefficients"));

  auto* verify = app.add_subcommand("verify", "machine-checked identities");
  verify
      ->add_option("suite", suite,
                   "thm3.1 | thm4.2 | lemma4.3 | thm4.4 | thm4.5 | thm4.6 | "
                   "variational | properties")
      ->required();
  add_common(verify);

  CLI11_PARSE(app, argc, argv);

  if (wgn->parsed()) return cmd_wgn(job, g, n);
  if (fe->parsed()) return cmd_free_energy(job, g);
  if (app.get_subcommand("quantize")->parsed()) return cmd_quantize(job);
  if (app.get_subcommand("wkb")->parsed()) return cmd_wkb(job);
  if (app.get_subcommand("voros")->parsed()) return cmd_voros(job);
  return cmd_verify(job, suite);
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResourceCapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
