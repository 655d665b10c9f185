#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "twzhu/scalars.hpp"

using namespace twzhu;

namespace {

CycloScalar random_cyclo(std::mt19937_64& rng, int N) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> c(euler_phi(N));
  for (auto& x : c) {
    x = Rational(num(rng), den(rng));
    x.canonicalize();
  }
  return CycloScalar(N, c);
}

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(format_rational(parse_rational("-6/4")) == "-3/2");
  CHECK(format_rational(Rational(5)) == "5/1");
  CHECK_THROWS_AS(parse_rational("1/0"), SchemaError);
  CHECK_THROWS_AS(parse_rational("x"), SchemaError);
  CHECK_THROWS_AS(parse_rational(""), SchemaError);
}

TEST_CASE("scalar arithmetic examples") {
  CHECK((CycloScalar(1) + CycloScalar(-1)).is_zero());
  CycloScalar z4 = CycloScalar::root_of_unity(1, 4);
  CHECK(z4 * z4 == CycloScalar(-1));
  for (int N : {3, 4, 6, 8, 12}) {
    CycloScalar z = CycloScalar::root_of_unity(1, N);
    CHECK(z.inv() == CycloScalar::root_of_unity(N - 1, N));
  }
  CHECK_THROWS_AS(CycloScalar(0).inv(), DivisionByZero);
  CycloScalar z3 = CycloScalar::root_of_unity(1, 3);
  CHECK_THROWS_AS(z3 + z4, ModulusMismatch);
  // rationals combine with any modulus
  CHECK((z4 + CycloScalar(2)).modulus() == 4);
}

TEST_CASE("roots of unity") {
  CHECK(CycloScalar::root_of_unity(0, 4) == CycloScalar(1));
  CHECK(CycloScalar::root_of_unity(2, 4) == CycloScalar(-1));
  for (int N : {1, 2, 3, 4, 5, 6, 8, 10, 12}) {
    for (int k = -N; k < 2 * N; ++k) {
      CycloScalar z = CycloScalar::root_of_unity(k, N);
      CycloScalar p(1);
      for (int i = 0; i < N; ++i) p *= z;
      CHECK(p == CycloScalar(1));
    }
  }
}

TEST_CASE("power_branch") {
  CHECK(power_branch(FracExp(1, 1)) == CycloScalar(-1));
  CHECK(power_branch(FracExp(0, 1)) == CycloScalar(1));
  CHECK(power_branch(FracExp(1, 2)) == CycloScalar::root_of_unity(1, 4));
  for (int T : {1, 2, 3, 4, 6})
    for (int a = -2 * T; a <= 2 * T; ++a)
      for (int b = -2 * T; b <= 2 * T; ++b)
        CHECK(power_branch(FracExp(a, T)) * power_branch(FracExp(b, T)) == power_branch(FracExp(a + b, T)));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (int N : {3, 4, 6, 8, 12})
    for (int k = 0; k < 30; ++k) {
      CycloScalar a = random_cyclo(rng, N), b = random_cyclo(rng, N), c = random_cyclo(rng, N);
      CHECK((a * b) * c == a * (b * c));
      CHECK((a + b) + c == a + (b + c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a * b == b * a);
      if (!a.is_zero()) CHECK(a * a.inv() == CycloScalar(1));
      CHECK((a - a).is_zero());
    }
}

TEST_CASE("gen_binomial") {
  CHECK(gen_binomial(Rational(1, 2), 2) == Rational(-1, 8));
  CHECK(gen_binomial(Rational(-1), 3) == Rational(-1));
  CHECK(gen_binomial(Rational(17, 3), 0) == 1);
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> num(-50, 50), den(1, 7);
  for (int k = 0; k < 40; ++k) {
    Rational a(num(rng), den(rng));
    a.canonicalize();
    for (unsigned j = 1; j <= 20; ++j) CHECK(gen_binomial(a, j) == gen_binomial(a - 1, j) + gen_binomial(a - 1, j - 1));
  }
}

TEST_CASE("FracExp split and order") {
  FracExp x(5, 3);
  CHECK(x.floor() == 1);
  CHECK(x.tilde() == 2);
  FracExp y(-1, 2);
  CHECK(y.floor() == -1);
  CHECK(y.tilde() == 1);
  CHECK(FracExp(1, 2) < FracExp(2, 2));
  CHECK((FracExp(1, 2) + FracExp(3, 2)) == FracExp::integer(2, 2));
  CHECK_THROWS_AS(FracExp(1, 2) + FracExp(1, 3), ContextMismatch);
  CHECK_THROWS_AS(FracExp::from_rational(Rational(1, 3), 2), ContextMismatch);
}
