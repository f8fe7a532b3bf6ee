#pragma once

#include <vector>

#include "spectralrec/polynomial.hpp"

namespace spectralrec {

/// Bernoulli number B_n (convention B_1 = -1/2, i.e. the expansion of
/// w/(e^w - 1)). Memoized, thread-unsafe like the rest of the cache-free API;
/// callers needing concurrency compute up front.
Rational bernoulli_number(int n);

/// Bernoulli polynomial B_n(X), satisfying B_n(0) = B_n and
/// B_n(X) = (-1)^n B_n(1 - X).
QPoly bernoulli_polynomial(int n);

}  // namespace spectralrec
