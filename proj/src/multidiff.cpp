#include "spectralrec/multidiff.hpp"

#include <algorithm>
#include <stdexcept>

#include "spectralrec/errors.hpp"

namespace spectralrec {

MultiDifferential MultiDifferential::bergman() {
  MultiDifferential b(2);
  b.add_term({PoleFactor::at_var(1, 2), PoleFactor::none()}, Rational(1));
  return b;
}

void MultiDifferential::add_term(TermKey key, const Rational& c) {
  if ((int)key.size() != n_)
    throw std::invalid_argument("MultiDifferential: wrong arity");
  if (c.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(std::move(key), c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

MultiDifferential& MultiDifferential::operator+=(const MultiDifferential& o) {
  if (o.n_ != n_)
    throw std::invalid_argument("MultiDifferential: arity mismatch");
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

MultiDifferential MultiDifferential::operator*(const Rational& s) const {
  MultiDifferential out(n_);
  if (s.is_zero()) return out;
  for (const auto& [k, c] : terms_) out.terms_.emplace(k, c * s);
  return out;
}

Rational MultiDifferential::eval(const std::vector<Rational>& at) const {
  if ((int)at.size() != n_)
    throw std::invalid_argument("MultiDifferential: wrong sample arity");
  Rational total(0);
  for (const auto& [key, c] : terms_) {
    Rational v = c;
    for (int i = 0; i < n_; ++i) {
      const PoleFactor& f = key[i];
      if (f.order == 0) continue;
      Rational base = at[i] - (f.diag ? at[f.var] : f.pole);
      if (base.is_zero())
        throw std::domain_error("MultiDifferential: sample point hits a pole");
      v = v * base.pow(-f.order);
    }
    total = total + v;
  }
  return total;
}

MultiDifferential MultiDifferential::permuted(
    const std::vector<int>& perm) const {
  MultiDifferential out(n_);
  for (const auto& [key, c] : terms_) {
    TermKey nk(n_);
    Rational sign(1);
    for (int i = 0; i < n_; ++i) {
      PoleFactor f = key[perm[i]];
      if (f.order != 0 && f.diag) {
        // find where the partner went
        int p = -1;
        for (int j = 0; j < n_; ++j)
          if (perm[j] == f.var) p = j;
        f.var = p;
      }
      nk[i] = f;
    }
    // Canonical home for a diagonal factor: the smaller slot index.
    for (int i = 0; i < n_; ++i) {
      PoleFactor& f = nk[i];
      if (f.order != 0 && f.diag && f.var < i) {
        if (nk[f.var].order != 0)
          throw std::logic_error("MultiDifferential: clashing diagonal factor");
        if (f.order % 2 != 0) sign = -sign;
        nk[f.var] = PoleFactor::at_var(i, f.order);
        f = PoleFactor::none();
      }
    }
    out.add_term(std::move(nk), c * sign);
  }
  return out;
}

bool MultiDifferential::is_symmetric() const {
  std::vector<int> perm(n_);
  for (int s = 0; s + 1 < n_; ++s) {
    for (int i = 0; i < n_; ++i) perm[i] = i;
    std::swap(perm[s], perm[s + 1]);
    if (!(permuted(perm) == *this)) return false;
  }
  return true;
}

QRatFunc MultiDifferential::to_ratfunc() const {
  if (n_ != 1)
    throw std::invalid_argument("MultiDifferential: to_ratfunc needs n = 1");
  QRatFunc out(0);
  QRatFunc z = QRatFunc::x();
  for (const auto& [key, c] : terms_)
    out = out + QRatFunc(c) * (z - QRatFunc(key[0].pole)).pow(-key[0].order);
  return out;
}

Rational MultiDifferential::integrate_all_slots_0_to_inf() const {
  Rational total(0);
  for (const auto& [key, c] : terms_) {
    Rational v = c;
    for (const PoleFactor& f : key) {
      if (f.diag || f.order < 2 || f.pole.is_zero())
        throw DivergentEndpoint(
            "iterated integral: factor without a convergent primitive");
      // ∫_0^∞ (t − r)^{−k} dt = (−r)^{1−k}/(k−1), regularized past interior
      // poles by the rational primitive (residue-free terms make this exact).
      v = v * (-f.pole).pow(1 - f.order) / Rational(f.order - 1);
    }
    total = total + v;
  }
  return total;
}

int MultiDifferential::max_order() const {
  int m = 0;
  for (const auto& [key, c] : terms_)
    for (const PoleFactor& f : key) m = std::max(m, f.order);
  return m;
}

}  // namespace spectralrec
