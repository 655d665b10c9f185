#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twzhu/series.hpp"

using namespace twzhu;

namespace {

ScalarSeries poly(int T, std::initializer_list<std::pair<int, int>> terms) {
  ScalarSeries s(T, FracExp(-10 * T, T), std::nullopt);
  for (auto [num, c] : terms) s.add(FracExp(num, T), Scalar(c));
  return s;
}

}  // namespace

TEST_CASE("series_mul examples") {
  ScalarSeries a = poly(1, {{0, 1}, {1, 1}});
  ScalarSeries b = poly(1, {{0, 1}, {1, -1}});
  ScalarSeries p = series_mul(a, b);
  CHECK(p.terms().size() == 2);
  CHECK(p.coeff(FracExp(0, 1)) == Scalar(1));
  CHECK(p.coeff(FracExp(2, 1)) == Scalar(-1));
  CHECK(p.coeff(FracExp(1, 1)).is_zero());

  ScalarSeries h = ScalarSeries::monomial(Scalar(1), FracExp(1, 2));
  ScalarSeries hh = series_mul(h, h);
  CHECK(hh.coeff(FracExp(2, 2)) == Scalar(1));

  ScalarSeries zero(1);
  CHECK(series_mul(a, zero).terms().empty());
}

TEST_CASE("series_mul tracks truncation windows") {
  ScalarSeries s = binom_expand(Rational(1, 2), 3, 1);
  ScalarSeries t = binom_expand(Rational(1, 2), 5, 1);
  ScalarSeries st = series_mul(s, t);
  REQUIRE(st.hi());
  CHECK(*st.hi() == FracExp(3, 1));
  // (1+z)^{1/2} (1+z)^{1/2} = 1 + z on every exact coefficient
  CHECK(st.coeff(FracExp(0, 1)) == Scalar(1));
  CHECK(st.coeff(FracExp(1, 1)) == Scalar(1));
  CHECK(st.coeff(FracExp(2, 1)).is_zero());
  CHECK(st.coeff(FracExp(3, 1)).is_zero());
  CHECK_THROWS_AS(st.coeff(FracExp(4, 1)), WindowUnderflow);
}

TEST_CASE("truncation soundness against a larger window") {
  for (int num = -7; num <= 7; ++num) {
    Rational a = make_rational(num, 3), b = make_rational(num + 2, 6);
    ScalarSeries small = series_mul(binom_expand(a, 4, 6), binom_expand(b, 4, 6));
    ScalarSeries big = series_mul(binom_expand(a, 9, 6), binom_expand(b, 9, 6));
    for (int j = 0; j <= 4; ++j) CHECK(small.coeff(FracExp::integer(j, 6)) == big.coeff(FracExp::integer(j, 6)));
    // product of binomial series is the binomial series of the sum
    ScalarSeries direct = binom_expand(a + b, 4, 6);
    for (int j = 0; j <= 4; ++j) CHECK(small.coeff(FracExp::integer(j, 6)) == direct.coeff(FracExp::integer(j, 6)));
  }
}

TEST_CASE("binom_expand examples") {
  ScalarSeries s = binom_expand(Rational(1, 2), 2, 1);
  CHECK(s.coeff(FracExp(0, 1)) == Scalar(1));
  CHECK(s.coeff(FracExp(1, 1)) == Scalar(Rational(1, 2)));
  CHECK(s.coeff(FracExp(2, 1)) == Scalar(Rational(-1, 8)));
  ScalarSeries one = binom_expand(Rational(1), 5, 1);
  CHECK(one.terms().size() == 2);
  CHECK(one.coeff(FracExp(5, 1)).is_zero());
  ScalarSeries geo = binom_expand(Rational(-1), 2, 1);
  CHECK(geo.coeff(FracExp(1, 1)) == Scalar(-1));
  CHECK(geo.coeff(FracExp(2, 1)) == Scalar(1));
}

TEST_CASE("residue and coeff") {
  ScalarSeries s = poly(2, {{-2, 2}, {-1, 3}});
  CHECK(residue(s) == Scalar(2));
  CHECK(residue(poly(1, {{0, 1}, {1, 1}})).is_zero());
  ScalarSeries zm2 = ScalarSeries::monomial(Scalar(1), FracExp(-2, 1));
  CHECK(residue(series_mul(binom_expand(Rational(1, 2), 3, 1), zm2)) == Scalar(Rational(1, 2)));
  CHECK(coeff(poly(1, {{0, 1}, {1, 2}}), FracExp(1, 1)) == Scalar(2));
  CHECK(coeff(ScalarSeries::monomial(Scalar(1), FracExp(1, 2)), FracExp(1, 2)) == Scalar(1));
  CHECK(coeff(binom_expand(Rational(1), 6, 1), FracExp(5, 1)).is_zero());
  ScalarSeries w(1, FracExp(-5, 1), FracExp(-2, 1));
  CHECK_THROWS_AS(residue(w), WindowUnderflow);
  CHECK_THROWS_AS(w.add(FracExp(-6, 1), Scalar(1)), WindowUnderflow);
}

TEST_CASE("substitute_neg follows the fixed branch") {
  ScalarSeries z = ScalarSeries::monomial(Scalar(1), FracExp(1, 1));
  CHECK(substitute_neg(z).coeff(FracExp(1, 1)) == Scalar(-1));
  ScalarSeries h = ScalarSeries::monomial(Scalar(1), FracExp(1, 2));
  CHECK(substitute_neg(h).coeff(FracExp(1, 2)) == CycloScalar::root_of_unity(1, 4));
  ScalarSeries c = ScalarSeries::monomial(Scalar(5), FracExp(0, 3));
  CHECK(substitute_neg(c).coeff(FracExp(0, 3)) == Scalar(5));
}

TEST_CASE("residue of a derivative vanishes") {
  ScalarSeries s = poly(1, {{-3, 2}, {-2, 7}, {1, -4}, {2, 5}});
  CHECK(residue(derivative(s)).is_zero());
  ScalarSeries prod = series_mul(s, derivative(s));
  // s s' = (s^2)'/2 has no z^{-1} term
  CHECK(residue(prod).is_zero());
}

TEST_CASE("expand_diff_power") {
  TwoVarSeries one = expand_diff_power(FracExp(1, 1), Dominant::first, 5);
  CHECK(one.terms().size() == 2);
  CHECK(one.coeff(FracExp(1, 1), FracExp(0, 1)) == Scalar(1));
  CHECK(one.coeff(FracExp(0, 1), FracExp(1, 1)) == Scalar(-1));

  TwoVarSeries half = expand_diff_power(FracExp(1, 2), Dominant::first, 2);
  CHECK(half.coeff(FracExp(1, 2), FracExp(0, 2)) == Scalar(1));
  CHECK(half.coeff(FracExp(-1, 2), FracExp(2, 2)) == Scalar(Rational(-1, 2)));
  CHECK(half.coeff(FracExp(-3, 2), FracExp(4, 2)) == Scalar(Rational(-1, 8)));
  CHECK_THROWS_AS(half.coeff(FracExp(-5, 2), FracExp(6, 2)), WindowUnderflow);

  TwoVarSeries opp = expand_diff_power(FracExp(1, 2), Dominant::second, 2);
  CHECK(opp.coeff(FracExp(0, 2), FracExp(1, 2)) == CycloScalar::root_of_unity(1, 4));

  // integer exponents: both expansions are the same polynomial
  for (int a = 0; a <= 6; ++a) {
    TwoVarSeries f = expand_diff_power(FracExp(a, 1), Dominant::first, a);
    TwoVarSeries g = expand_diff_power(FracExp(a, 1), Dominant::second, a);
    CHECK(f.terms() == g.terms());
  }
}
