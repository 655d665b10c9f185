#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "twzhu/indexcalc.hpp"

using namespace twzhu;

TEST_CASE("split") {
  Split s = split(FracExp(5, 3));
  CHECK(s.floor == 1);
  CHECK(s.tilde == 2);
  s = split(FracExp(-1, 2));
  CHECK(s.floor == -1);
  CHECK(s.tilde == 1);
  for (int k = -5; k <= 5; ++k) {
    s = split(FracExp::integer(k, 4));
    CHECK(s.floor == k);
    CHECK(s.tilde == 0);
  }
  // bijection onto Z x [0, T)
  for (int T : {1, 2, 3, 4, 6})
    for (int num = -40; num <= 40; ++num) {
      Split p = split(FracExp(num, T));
      CHECK(p.tilde >= 0);
      CHECK(p.tilde < T);
      CHECK(p.floor * T + p.tilde == num);
    }
}

TEST_CASE("delta_ge") {
  CHECK(delta_ge(3, 3) == 1);
  CHECK(delta_ge(2, 3) == 0);
  CHECK(delta_ge(-1, -5) == 1);
}

TEST_CASE("lambda and lambda_t examples") {
  CHECK(lambda(FracExp(0, 1), 0) == FracExp(0, 1));
  CHECK(lambda(FracExp(1, 2), 1) == FracExp(1, 2));
  CHECK(lambda(FracExp(1, 2), 0) == FracExp(0, 2));
  CHECK(lambda_t(1, FracExp(1, 2), 0) == FracExp::integer(1, 2));
  CHECK(lambda_t(1, FracExp(2, 2), 1) == FracExp(3, 2));
  for (int T : {2, 3, 4, 6})
    for (int k = -3; k <= 3; ++k)
      for (int r = 1; r < T; ++r) CHECK(lambda_t(0, FracExp::integer(k, T), r) == FracExp(-T + k * T + r, T));
}

TEST_CASE("lambda_t with t = 0 agrees with lambda exactly when the second delta is off") {
  // Derived by enumeration: with t = 0 the extra term delta_{x~ - T}(r) never fires for r >= 0,
  // so the two agree on the whole box.
  for (int T : {1, 2, 3, 4, 6})
    for (int num = -6 * T; num <= 6 * T; ++num)
      for (int r = 0; r < T; ++r) CHECK(lambda_t(0, FracExp(num, T), r) == lambda(FracExp(num, T), r));
}

TEST_CASE("TwistContext") {
  TwistContext c = TwistContext::make(4, 3, 2);
  CHECK(c.j3() == 1);
  CHECK(c.j3vee() == 3);
  CHECK(c.j3vee() == (c.T - c.j3()) % c.T);
  CHECK_THROWS_AS(TwistContext::make(2, 2, 0), ContextMismatch);
}

TEST_CASE("index lemmas on the default box") {
  LemmaBox box;
  LemmaReport par = verify_index_lemmas(box);
  CHECK(par.ok());
  CHECK(par.total_cases() >= 100000);
  LemmaReport ser = verify_index_lemmas_serial(box);
  REQUIRE(ser.lemmas.size() == par.lemmas.size());
  for (std::size_t i = 0; i < ser.lemmas.size(); ++i) {
    CHECK(ser.lemmas[i].name == par.lemmas[i].name);
    CHECK(ser.lemmas[i].cases == par.lemmas[i].cases);
    CHECK(ser.lemmas[i].failures == 0);
  }
}

TEST_CASE("single lemma instances") {
  // delta_{i+x}(r+x) = delta_i(r) at i = 2, r = 3, x = 5
  CHECK(delta_ge(7, 8) == delta_ge(2, 3));
  CHECK(delta_ge(7, 8) == 0);
  // untwisted collapse of the F-commutativity lemma
  for (int z = -3; z <= 3; ++z)
    for (int x = -3; x <= 3; ++x)
      for (int q = -3; q <= 3; ++q)
        CHECK(lambda(FracExp(z + x, 1), 0) - FracExp(x, 1) + FracExp(q, 1) == FracExp(z + q, 1));
}

TEST_CASE("invalid boxes") {
  LemmaBox empty;
  empty.Ts.clear();
  CHECK_THROWS_AS(verify_index_lemmas(empty), InvalidBox);
  LemmaBox neg;
  neg.range = -1;
  CHECK_THROWS_AS(verify_index_lemmas(neg), InvalidBox);
}

TEST_CASE("binomial identities") {
  auto a = binomial_identity_A(1, Rational(2), Rational(1));
  CHECK(a.first == a.second);
  CHECK(a.first == std::vector<Rational>{1, 1});
  auto b = binomial_identity_B(1, Rational(1), Rational(1));
  CHECK(b.first == b.second);
  CHECK(b.first == std::vector<Rational>{1, 3});
  auto a0 = binomial_identity_A(0, Rational(7, 3), Rational(-2, 5));
  CHECK(a0.first == std::vector<Rational>{1});
  CHECK(a0.second == std::vector<Rational>{1});

  auto samples = sample_rational_pairs(50, 6, 2024);
  CHECK(samples == sample_rational_pairs(50, 6, 2024));
  for (const auto& [e, f] : samples) {
    CHECK(e.get_den() <= 6);
    CHECK(f.get_den() <= 6);
  }
  BinomialReport rep = verify_binomial_identities(12, samples);
  CHECK(rep.ok());
  CHECK(rep.checks == 2 * 13 * 50);
}
