#include "spectralrec/calculus.hpp"

namespace spectralrec {

namespace detail {

std::vector<mpz_class> divisors(const mpz_class& n) {
  mpz_class m = abs(n);
  if (m == 0) return {};
  // trial-division factorization; square-free parts keep these numbers small
  std::vector<std::pair<mpz_class, int>> fac;
  mpz_class d = 2;
  mpz_class limit;
  size_t steps = 0;
  while (m > 1) {
    if (++steps > 2'000'000)
      throw NonSplitDenominator(
          "coefficient too large to factor for rational root search");
    if (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
      int e = 0;
      while (mpz_divisible_p(m.get_mpz_t(), d.get_mpz_t())) {
        m /= d;
        ++e;
      }
      fac.emplace_back(d, e);
    }
    if (d * d > m && m > 1) {
      fac.emplace_back(m, 1);
      break;
    }
    d += (d == 2) ? 1 : 2;
  }
  std::vector<mpz_class> divs{1};
  for (const auto& [prime, e] : fac) {
    size_t base = divs.size();
    mpz_class pe = 1;
    for (int i = 1; i <= e; ++i) {
      pe *= prime;
      for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pe);
    }
  }
  return divs;
}

}  // namespace detail

std::vector<Rational> rational_roots_squarefree(const QPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  if (p.degree() == 1) {
    roots.push_back(-p.coeff(0) / p.coeff(1));
    return roots;
  }
  // clear denominators to a primitive integer polynomial
  mpz_class lcm = 1;
  for (int i = 0; i <= p.degree(); ++i)
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), p.coeff(i).den().get_mpz_t());
  std::vector<mpz_class> c(p.degree() + 1);
  mpz_class content = 0;
  for (int i = 0; i <= p.degree(); ++i) {
    c[i] = p.coeff(i).num() * (lcm / p.coeff(i).den());
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c[i].get_mpz_t());
  }
  if (content > 1)
    for (auto& ci : c) ci /= content;
  int low = 0;
  while (c[low] == 0) {
    if (low == 0) roots.push_back(Rational(0));
    ++low;  // square-free input has at most one root at 0
  }
  if (low > 0) c.erase(c.begin(), c.begin() + low);
  if (c.size() <= 1) return roots;
  auto eval_zero = [&](const Rational& r) {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it)
      acc = acc * r + Rational(mpq_class(*it));
    return acc.is_zero();
  };
  auto push_if_root = [&](const Rational& cand) {
    if (!eval_zero(cand)) return;
    for (const auto& r : roots)
      if (r == cand) return;  // p/q candidates can repeat after reduction
    roots.push_back(cand);
  };
  for (const auto& a : detail::divisors(c.front())) {
    for (const auto& b : detail::divisors(c.back())) {
      Rational cand(mpq_class(a, b));
      push_if_root(cand);
      push_if_root(-cand);
    }
  }
  return roots;
}

}  // namespace spectralrec
