#include "spectralrec/toprec.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>
#include <tuple>

#include "spectralrec/calculus.hpp"
#include "spectralrec/errors.hpp"

namespace spectralrec {

namespace {

// Dense window of a Laurent expansion in u = z - r: coefficients of
// u^e for lo <= e <= hi, everything past hi discarded.
struct Series {
  int lo = 0;
  std::vector<Rational> c;

  Rational at(int e) const {
    if (e < lo || e - lo >= (int)c.size()) return Rational(0);
    return c[e - lo];
  }
  bool empty() const { return c.empty(); }
  void trim() {
    size_t k = 0;
    while (k < c.size() && c[k].is_zero()) ++k;
    c.erase(c.begin(), c.begin() + (long)k);
    lo += (int)k;
  }
  static Series one() { return {0, {Rational(1)}}; }
};

Series expand(const QRatFunc& f, const Rational& center, int hi) {
  auto ls = laurent_expand(f, Point(center), hi);
  Series s;
  s.lo = ls.lead();
  for (int e = ls.lead(); e <= hi; ++e) s.c.push_back(ls.coeff(e));
  s.trim();
  return s;
}

Series mul(const Series& a, const Series& b, int hi) {
  Series r;
  r.lo = a.lo + b.lo;
  if (a.empty() || b.empty() || r.lo > hi) return {0, {}};
  r.c.assign(hi - r.lo + 1, Rational(0));
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    int base = a.lo + (int)i + b.lo;
    for (size_t j = 0; j < b.c.size() && base + (int)j <= hi; ++j) {
      int e = base + (int)j;
      r.c[e - r.lo] = r.c[e - r.lo] + a.c[i] * b.c[j];
    }
  }
  return r;
}

// All Laurent data the residue extraction needs at one effective
// ramification point.
struct RamData {
  Rational r;
  int hi;                       // expansion window for base series
  Series ker_inv;               // σ'(z)/(2 Δ(z) x'(z)); every bracket summand
                                // has exactly one σ-pullback slot, so the
                                // dσ/dz factor is folded in here once
  Series sig1;                  // σ(z) - r  (vanishes at r; slope -1)
  Series w02_diag;              // 1/(z - σ(z))^2
  std::map<std::tuple<bool, Rational, int>, Series> factors;
  const CurveModel* curve;

  // (z - pole)^{-order}, composed with σ on the second sheet.
  const Series& factor(const PoleFactor& f, bool sigma_sheet) {
    auto key = std::make_tuple(sigma_sheet, f.pole, f.order);
    auto it = factors.find(key);
    if (it != factors.end()) return it->second;
    QRatFunc g =
        (QRatFunc::x() - QRatFunc(f.pole)).pow(-f.order);
    if (sigma_sheet) g = g.subs(curve->sigma);
    return factors.emplace(key, expand(g, r, hi)).first->second;
  }
};

}  // namespace

QRatFunc recursion_kernel(const CurveModel& curve, const RamPoint& r,
                          const Rational& z0) {
  if (!r.effective)
    throw std::invalid_argument(
        "recursion kernel: residue at an ineffective point is zero");
  QRatFunc z = QRatFunc::x();
  QRatFunc pair = (QRatFunc(z0) - z).inv() - (QRatFunc(z0) - curve.sigma).inv();
  return pair / (curve.delta_dx * QRatFunc(Rational(2)));
}

Engine::Engine(CurveModel curve, int cap)
    : curve_(std::move(curve)), cap_(cap) {}

void Engine::preload(int g, int n, MultiDifferential w) {
  if (w.vars() != n)
    throw std::invalid_argument("preload: arity mismatch");
  memo_[{g, n}] = std::move(w);
}

const MultiDifferential& Engine::correlation(int g, int n) {
  if (g < 0 || n < 1 || 2 * g + n < 3)
    throw std::invalid_argument(
        "correlation: need 2g+n >= 3 (W_{0,1}, W_{0,2} are special)");
  if (2 * g + n > cap_)
    throw ResourceCapExceeded("correlation: 2g+n = " +
                              std::to_string(2 * g + n) + " exceeds cap " +
                              std::to_string(cap_));
  auto key = std::make_pair(g, n);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  MultiDifferential w = compute(g, n);
  return memo_.emplace(key, std::move(w)).first->second;
}

MultiDifferential Engine::compute(int g, int n1) {
  const int n = n1 - 1;  // spectator count
  MultiDifferential result(n1);

  // Make sure every input exists, and record the largest pole order among
  // them to size the expansion windows.
  int maxord = 2;
  bool diag_case = (g == 1 && n1 == 1);  // bracket uses W_{0,2}(z, σ(z))
  if (g >= 1 && !diag_case)
    maxord = std::max(maxord, correlation(g - 1, n + 2).max_order());
  auto stored_side = [&](int gs, int ns) {
    return !(gs == 0 && ns == 2);  // W_{0,2} couples a spectator instead
  };
  for (int g1 = 0; g1 <= g; ++g1)
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      unsigned maskc = ((1u << n) - 1) & ~mask;
      int p1 = __builtin_popcount(mask), p2 = n - p1;
      int g2 = g - g1;
      if ((g1 == 0 && p1 == 0) || (g2 == 0 && p2 == 0)) continue;
      if (stored_side(g1, p1 + 1))
        maxord = std::max(maxord, correlation(g1, p1 + 1).max_order());
      if (stored_side(g2, p2 + 1))
        maxord = std::max(maxord, correlation(g2, p2 + 1).max_order());
      (void)maskc;
    }

  for (const RamPoint& rp : curve_.ramification) {
    if (!rp.effective) continue;
    RamData rd;
    rd.r = rp.location.value();
    rd.curve = &curve_;
    rd.hi = 2 * maxord + std::max(0, rp.ord_delta_dx) + 4;
    rd.ker_inv = expand(
        curve_.sigma.derivative() /
            (curve_.delta_dx * QRatFunc(Rational(2))),
        rd.r, rd.hi);
    rd.sig1 = expand(curve_.sigma - QRatFunc(rd.r), rd.r, rd.hi);
    rd.w02_diag =
        expand((QRatFunc::x() - curve_.sigma).pow(-2), rd.r, rd.hi);

    // One summand of the bracket: pure-z series S (kernel prefactor not yet
    // included), W_{0,2} couplings to spectator slots, and the inherited
    // spectator factors. Extract the residue for every pole-order tag.
    auto emit = [&](const Rational& cc, const Series& S,
                    const std::vector<std::pair<int, bool>>& couplings,
                    const MultiDifferential::TermKey& spect) {
      Series A = mul(rd.ker_inv, S, -1);
      A.trim();
      if (A.empty()) return;
      int T = -1 - A.lo;  // total budget for all expansion orders
      if (T < 1) return;
      std::vector<Series> P(T + 1);  // P[b] = A·(σ(z)-r)^b
      P[0] = A;
      for (int b = 1; b <= T; ++b) P[b] = mul(P[b - 1], rd.sig1, -1);

      int nc = (int)couplings.size();
      std::vector<int> m(nc, 0);
      // iterate over coupling orders m with Σm <= T-1
      while (true) {
        int msum = 0, mid = 0, msig = 0;
        Rational wt = cc;
        for (int i = 0; i < nc; ++i) {
          msum += m[i];
          (couplings[i].second ? msig : mid) += m[i];
          wt = wt * Rational(m[i] + 1);
        }
        if (msum <= T - 1) {
          for (int k = 1; k + msum <= T; ++k) {
            Rational coeff =
                P[msig].at(-1 - mid - k) - P[msig + k].at(-1 - mid);
            if (coeff.is_zero()) continue;
            MultiDifferential::TermKey key = spect;
            key[0] = PoleFactor::at(rd.r, k + 1);
            for (int i = 0; i < nc; ++i)
              key[couplings[i].first] = PoleFactor::at(rd.r, m[i] + 2);
            result.add_term(std::move(key), wt * coeff);
          }
        }
        // next assignment
        int i = 0;
        for (; i < nc; ++i) {
          if (msum - m[i] + (m[i] + 1) <= T - 1) {
            ++m[i];
            break;
          }
          msum -= m[i];
          m[i] = 0;
        }
        if (i == nc) break;
      }
    };

    MultiDifferential::TermKey blank(n1);  // all factors "none"

    // Bracket part one: W_{g-1, n+2}(z, σ(z), z_1, ..., z_n).
    if (g >= 1) {
      if (diag_case) {
        emit(Rational(1), rd.w02_diag, {}, blank);
      } else {
        for (const auto& [tk, tc] : correlation(g - 1, n + 2).terms()) {
          Series S = mul(rd.factor(tk[0], false), rd.factor(tk[1], true),
                         rd.hi);
          MultiDifferential::TermKey spect = blank;
          for (int j = 0; j < n; ++j) spect[j + 1] = tk[j + 2];
          emit(tc, S, {}, spect);
        }
      }
    }

    // Bracket part two: Σ' W_{g1}(z, z_{I1}) · W_{g2}(σ(z), z_{I2}).
    struct SideOpt {
      Rational c;
      const Series* S;  // nullptr → no z-dependent factor
      int coupling;     // output slot wanting a W_{0,2} coupling, or -1
      std::vector<std::pair<int, PoleFactor>> spect;
    };
    auto side_options = [&](int gs, unsigned mask, bool sigma_sheet) {
      std::vector<int> slots;  // output slots covered by this side
      for (int j = 0; j < n; ++j)
        if (mask & (1u << j)) slots.push_back(j + 1);
      std::vector<SideOpt> opts;
      if (gs == 0 && slots.size() == 1) {
        opts.push_back({Rational(1), nullptr, slots[0], {}});
        return opts;
      }
      for (const auto& [tk, tc] : correlation(gs, (int)slots.size() + 1)
                                      .terms()) {
        SideOpt o{tc, &rd.factor(tk[0], sigma_sheet), -1, {}};
        for (size_t i = 0; i < slots.size(); ++i)
          o.spect.emplace_back(slots[i], tk[i + 1]);
        opts.push_back(std::move(o));
      }
      return opts;
    };

    for (int g1 = 0; g1 <= g; ++g1)
      for (unsigned mask = 0; mask < (1u << n); ++mask) {
        unsigned maskc = ((1u << n) - 1) & ~mask;
        int p1 = __builtin_popcount(mask), p2 = n - p1;
        int g2 = g - g1;
        if ((g1 == 0 && p1 == 0) || (g2 == 0 && p2 == 0)) continue;
        auto left = side_options(g1, mask, false);
        auto right = side_options(g2, maskc, true);
        for (const SideOpt& L : left)
          for (const SideOpt& R : right) {
            Series S = Series::one();
            if (L.S && R.S)
              S = mul(*L.S, *R.S, rd.hi);
            else if (L.S)
              S = *L.S;
            else if (R.S)
              S = *R.S;
            std::vector<std::pair<int, bool>> couplings;
            if (L.coupling >= 0) couplings.push_back({L.coupling, false});
            if (R.coupling >= 0) couplings.push_back({R.coupling, true});
            MultiDifferential::TermKey spect = blank;
            for (const auto& [slot, f] : L.spect) spect[slot] = f;
            for (const auto& [slot, f] : R.spect) spect[slot] = f;
            emit(L.c * R.c, S, couplings, spect);
          }
      }
  }
  return result;
}

FreeEnergy Engine::free_energy(int g) {
  if (g < 2) throw std::invalid_argument("free_energy: needs g >= 2");
  QRatFunc w = correlation(g, 1).to_ratfunc();
  auto anti = antiderivative(w);
  if (!anti.logs.empty())
    throw InternalInconsistency("free energy: W_{g,1} primitive has a log");
  QRatFunc ydx = w01();
  Rational full(0), restricted(0);
  for (const RamPoint& rp : curve_.ramification) {
    if (!residue_at(ydx, rp.location).is_zero())
      throw InternalInconsistency(
          "free energy: y dx has a residue at a ramification point");
    // Res_r[Φ·W_{g,1}] = −Res_r[y·x'·∫W]: the primitive of W is rational
    // (residue-free poles only), so integration by parts needs no branch
    // bookkeeping, and the constant of integration drops against the
    // residue-free y dx.
    Rational c = Rational(0) - residue_at(ydx * anti.rational, rp.location);
    full = full + c;
    if (rp.effective) restricted = restricted + c;
  }
  Rational norm = Rational(1) / Rational(2 - 2 * g);
  return {g, full * norm, 2 - 2 * g, full == restricted};
}

std::pair<LogPolynomial<Rational>, LogPolynomial<Rational>> weber_low_genus(
    const CurveModel& curve) {
  if (curve.tag != BuiltinTag::kWeber)
    throw std::invalid_argument(
        "not available: general F0/F1 out of scope");
  using LP = LogPolynomial<Rational>;
  QRatFunc lam2 = QRatFunc::x() * QRatFunc::x();
  LP f0 = LP(lam2 * QRatFunc(Rational(-3, 4))) +
          LP::log_term(lam2 * QRatFunc(Rational(1, 2)), 1);
  LP f1 = LP::log_term(QRatFunc(Rational(-1, 12)), 1);
  return {f0, f1};
}

bool verify_variational(Engine& engine, int g, int n) {
  if (engine.model().tag != BuiltinTag::kWeber)
    throw std::invalid_argument("variational check: Weber only");
  if (2 * g + n < 3)
    throw std::invalid_argument("variational check: needs 2g+n >= 3");
  Rational integral =
      engine.correlation(g, n).integrate_all_slots_0_to_inf();
  Rational expected;
  if (g >= 2) {
    expected = engine.free_energy(g).value_at_one;
    for (int i = 0; i < n; ++i) expected = expected * Rational(2 - 2 * g - i);
  } else {
    auto [f0, f1] = weber_low_genus(engine.model());
    LogPolynomial<Rational> f = g == 0 ? f0 : f1;
    for (int i = 0; i < n; ++i) f = f.derivative();
    if (f.log_degree() > 0)
      throw InternalInconsistency("variational check: log term survives");
    expected = f.base().eval(Rational(1));
  }
  return integral == expected;
}

}  // namespace spectralrec
