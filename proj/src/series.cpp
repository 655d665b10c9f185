#include "twzhu/series.hpp"

namespace twzhu {

ScalarSeries binom_expand(const Rational& alpha, unsigned jmax, int T) {
  ScalarSeries s(T, FracExp(0, T), FracExp::integer(jmax, T));
  Rational b(1);
  for (unsigned j = 0; j <= jmax; ++j) {
    if (j > 0) b = b * (alpha - (j - 1)) / j;
    s.add(FracExp::integer(j, T), Scalar(b));
  }
  return s;
}

Scalar residue(const ScalarSeries& s) { return s.residue(); }

Scalar coeff(const ScalarSeries& s, const FracExp& e) { return s.coeff(e); }

ScalarSeries derivative(const ScalarSeries& s) {
  const int T = s.T();
  FracExp one = FracExp::integer(1, T);
  std::optional<FracExp> hi;
  if (s.hi()) hi = *s.hi() - one;
  ScalarSeries r(T, s.lo() - one, hi);
  for (const auto& [e, c] : s.terms()) r.add(e - one, c * Scalar(e.to_rational()));
  return r;
}

void TwoVarSeries::add(const FracExp& e1, const FracExp& e2, const Scalar& c) {
  if (c.is_zero()) return;
  auto key = std::make_pair(e1, e2);
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Scalar TwoVarSeries::coeff(const FracExp& e1, const FracExp& e2) const {
  const FracExp& reg = dominant_ == Dominant::first ? e2 : e1;
  if (reg > FracExp::integer(jmax_, T_))
    throw WindowUnderflow("two-variable coefficient beyond expansion order " + std::to_string(jmax_));
  auto it = terms_.find({e1, e2});
  return it == terms_.end() ? Scalar() : it->second;
}

TwoVarSeries expand_diff_power(const FracExp& alpha, Dominant d, unsigned jmax) {
  const int T = alpha.T();
  TwoVarSeries s(T, d, jmax);
  Scalar pref = d == Dominant::first ? Scalar(1) : power_branch(alpha);
  Rational a = alpha.to_rational();
  for (unsigned j = 0; j <= jmax; ++j) {
    Rational b = gen_binomial(a, j);
    if (b == 0) continue;
    if (j % 2) b = -b;
    FracExp jj = FracExp::integer(j, T);
    if (d == Dominant::first)
      s.add(alpha - jj, jj, Scalar(b));
    else
      s.add(jj, alpha - jj, pref * Scalar(b));
  }
  return s;
}

}  // namespace twzhu
