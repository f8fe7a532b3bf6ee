#pragma once

#include <map>
#include <vector>

#include "spectralrec/ratfunc.hpp"

namespace spectralrec {

/// One per-slot pole factor of a product term: (z_slot − pole)^{−order} for a
/// finite rational pole, or (z_slot − z_var)^{−order} for the diagonal kind.
/// order == 0 means the term does not depend on this slot at all.
struct PoleFactor {
  int order = 0;
  bool diag = false;
  int var = -1;
  Rational pole;

  friend bool operator==(const PoleFactor& a, const PoleFactor& b) {
    if (a.order != b.order || a.diag != b.diag) return false;
    if (a.order == 0) return true;
    return a.diag ? a.var == b.var : a.pole == b.pole;
  }
  friend bool operator<(const PoleFactor& a, const PoleFactor& b) {
    if (a.order != b.order) return a.order < b.order;
    if (a.order == 0) return false;
    if (a.diag != b.diag) return a.diag < b.diag;
    if (a.diag) return a.var < b.var;
    return a.pole < b.pole;
  }

  static PoleFactor none() { return {}; }
  static PoleFactor at(Rational p, int k) { return {k, false, -1, std::move(p)}; }
  static PoleFactor at_var(int v, int k) { return {k, true, v, Rational(0)}; }
};

/// An exact multidifferential on n copies of P¹, stored as a sum of
/// separable product terms
///
///   W / (dz_0 ⋯ dz_{n-1}) = Σ c · Π_i (z_i − pole_i)^{−k_i}.
///
/// Correlation functions of genus-0 curves with finite effective
/// ramification points live in this space for 2g+n ≥ 3 (their per-variable
/// poles are finite, with vanishing residue and decay at ∞); the only
/// diagonal-kind member used is the n = 2 Bergman kernel.
class MultiDifferential {
 public:
  using TermKey = std::vector<PoleFactor>;
  using TermMap = std::map<TermKey, Rational>;

  explicit MultiDifferential(int n = 1) : n_(n) {}

  /// dz_0 dz_1 / (z_0 - z_1)^2.
  static MultiDifferential bergman();

  int vars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }

  void add_term(TermKey key, const Rational& c);

  MultiDifferential& operator+=(const MultiDifferential& o);
  friend MultiDifferential operator+(MultiDifferential a,
                                     const MultiDifferential& b) {
    a += b;
    return a;
  }
  MultiDifferential operator*(const Rational& s) const;
  friend bool operator==(const MultiDifferential& a,
                         const MultiDifferential& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

  /// Exact value of the dz-coefficient at a rational sample point; throws
  /// std::domain_error if a pole is hit.
  Rational eval(const std::vector<Rational>& at) const;

  /// Slots rearranged: slot i of the result is slot perm[i] of *this.
  MultiDifferential permuted(const std::vector<int>& perm) const;

  /// True iff invariant under all transpositions of slots.
  bool is_symmetric() const;

  /// n = 1 only: the dz-coefficient as a rational function.
  QRatFunc to_ratfunc() const;

  /// Σ_t c · Π_i (−r_i)^{1−k_i}/(k_i − 1): the regularized iterated integral
  /// over (0, ∞) in every slot (exact for residue-free terms; throws
  /// DivergentEndpoint if a factor has order < 2 or a pole at 0).
  Rational integrate_all_slots_0_to_inf() const;

  /// Largest factor order appearing anywhere (0 for the zero element).
  int max_order() const;

 private:
  int n_;
  TermMap terms_;
};

}  // namespace spectralrec
