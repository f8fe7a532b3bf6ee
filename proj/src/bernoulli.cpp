#include "spectralrec/bernoulli.hpp"

namespace spectralrec {

Rational bernoulli_number(int n) {
  static std::vector<Rational> cache{Rational(1)};
  while ((int)cache.size() <= n) {
    int m = (int)cache.size();
    // sum_{j=0}^{m} C(m+1, j) B_j = 0  for m >= 1
    Rational acc(0);
    for (int j = 0; j < m; ++j) acc += binomial(m + 1, j) * cache[j];
    cache.push_back(-acc / Rational(m + 1));
  }
  return cache[n];
}

QPoly bernoulli_polynomial(int n) {
  std::vector<Rational> c(n + 1);
  for (int k = 0; k <= n; ++k)
    c[n - k] = binomial(n, k) * bernoulli_number(k);
  return QPoly(std::move(c));
}

}  // namespace spectralrec
