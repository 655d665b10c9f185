#pragma once

#include <map>
#include <optional>
#include <utility>

#include "twzhu/scalars.hpp"
#include "twzhu/vec.hpp"

namespace twzhu {

/// Lower-truncated series in z^{1/T}. Coefficients below `lo` are zero; coefficients above
/// `hi` are unknown (hi empty means the series is exact everywhere).
template <class C>
class FracSeries {
 public:
  FracSeries(int T, FracExp lo, std::optional<FracExp> hi) : T_(T), lo_(lo), hi_(hi) {}
  explicit FracSeries(int T) : T_(T), lo_(0, T), hi_(std::nullopt) {}

  static FracSeries monomial(const C& c, const FracExp& e) {
    FracSeries s(e.T(), e, std::nullopt);
    s.set(e, c);
    return s;
  }

  int T() const { return T_; }
  const FracExp& lo() const { return lo_; }
  const std::optional<FracExp>& hi() const { return hi_; }
  const std::map<FracExp, C>& terms() const { return terms_; }

  bool known(const FracExp& e) const { return !hi_ || e <= *hi_; }

  /// Stores c at e (adds to an existing coefficient). Terms outside the window are rejected.
  void add(const FracExp& e, const C& c) {
    if (is_zero(c)) return;
    if (e < lo_) throw WindowUnderflow("term z^" + e.str() + " below declared support " + lo_.str());
    if (!known(e)) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      terms_.emplace(e, c);
      return;
    }
    it->second += c;
    if (is_zero(it->second)) terms_.erase(it);
  }
  void set(const FracExp& e, const C& c) {
    terms_.erase(e);
    add(e, c);
  }

  C coeff(const FracExp& e) const {
    if (!known(e)) throw WindowUnderflow("coefficient of z^" + e.str() + " beyond window end " + hi_->str());
    auto it = terms_.find(e);
    return it == terms_.end() ? C() : it->second;
  }

  C residue() const { return coeff(FracExp(-T_, T_)); }

 private:
  int T_;
  FracExp lo_;
  std::optional<FracExp> hi_;
  std::map<FracExp, C> terms_;
};

using ScalarSeries = FracSeries<Scalar>;
using VecSeries = FracSeries<Vec>;

/// Cauchy product; the result window is the largest one on which every coefficient is exact.
template <class C>
FracSeries<C> series_mul(const ScalarSeries& s1, const FracSeries<C>& s2) {
  if (s1.T() != s2.T()) throw ContextMismatch("series over different T");
  FracExp lo = s1.lo() + s2.lo();
  std::optional<FracExp> hi;
  if (s1.hi()) hi = *s1.hi() + s2.lo();
  if (s2.hi()) {
    FracExp h2 = *s2.hi() + s1.lo();
    if (!hi || h2 < *hi) hi = h2;
  }
  if (hi && *hi < lo) throw WindowUnderflow("product window is empty");
  FracSeries<C> r(s1.T(), lo, hi);
  for (const auto& [e1, c1] : s1.terms())
    for (const auto& [e2, c2] : s2.terms()) {
      FracExp e = e1 + e2;
      if (!r.known(e)) continue;
      r.add(e, scale(c1, c2));
    }
  return r;
}

/// sum_{j=0}^{jmax} binom(alpha, j) z^j with window [0, jmax].
ScalarSeries binom_expand(const Rational& alpha, unsigned jmax, int T);

Scalar residue(const ScalarSeries& s);
Scalar coeff(const ScalarSeries& s, const FracExp& e);

/// c z^e -> c e^{pi i e} z^e
template <class C>
FracSeries<C> substitute_neg(const FracSeries<C>& s) {
  FracSeries<C> r(s.T(), s.lo(), s.hi());
  for (const auto& [e, c] : s.terms()) r.add(e, scale(power_branch(e), c));
  return r;
}

/// Formal derivative d/dz.
ScalarSeries derivative(const ScalarSeries& s);

template <class C>
FracSeries<C> series_add(const FracSeries<C>& a, const FracSeries<C>& b) {
  FracExp lo = a.lo() < b.lo() ? a.lo() : b.lo();
  std::optional<FracExp> hi = a.hi();
  if (b.hi() && (!hi || *b.hi() < *hi)) hi = b.hi();
  FracSeries<C> r(a.T(), lo, hi);
  for (const auto& [e, c] : a.terms()) r.add(e, c);
  for (const auto& [e, c] : b.terms()) r.add(e, c);
  return r;
}

enum class Dominant { first, second };

/// Expansion of a power of (z1 - z2) in one of the two regions. Exponents of the
/// non-dominant variable are exact up to `jmax`.
class TwoVarSeries {
 public:
  TwoVarSeries(int T, Dominant d, unsigned jmax) : T_(T), dominant_(d), jmax_(jmax) {}

  int T() const { return T_; }
  Dominant dominant() const { return dominant_; }
  unsigned jmax() const { return jmax_; }
  const std::map<std::pair<FracExp, FracExp>, Scalar>& terms() const { return terms_; }

  void add(const FracExp& e1, const FracExp& e2, const Scalar& c);
  /// Coefficient of z1^{e1} z2^{e2}; WindowUnderflow when the regular variable's exponent exceeds jmax.
  Scalar coeff(const FracExp& e1, const FracExp& e2) const;

 private:
  int T_;
  Dominant dominant_;
  unsigned jmax_;
  std::map<std::pair<FracExp, FracExp>, Scalar> terms_;
};

TwoVarSeries expand_diff_power(const FracExp& alpha, Dominant d, unsigned jmax);

}  // namespace twzhu
