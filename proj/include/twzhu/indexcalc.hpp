#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twzhu/scalars.hpp"

namespace twzhu {

/// Eigenvalue residues of a homogeneous element under (g1, g2) and the derived g3 data.
struct TwistContext {
  int T = 1;
  int j1 = 0;
  int j2 = 0;

  static TwistContext make(int T, int j1, int j2);
  int j3() const { return (j1 + j2) % T; }
  int j3vee() const { return ((-j1 - j2) % T + T) % T; }
};

/// Residue of k modulo T in [0, T).
inline int mod_T(std::int64_t k, int T) {
  std::int64_t r = k % T;
  return static_cast<int>(r < 0 ? r + T : r);
}

struct Split {
  std::int64_t floor;
  int tilde;
};

Split split(const FracExp& x);

/// 1 if i >= r, else 0.
inline int delta_ge(std::int64_t i, std::int64_t r) { return i >= r ? 1 : 0; }

/// -1 + floor(x) + delta_{x~}(r) + r/T
FracExp lambda(const FracExp& x, int r);
/// -1 + floor(x) + delta_{t+x~}(r) + delta_{t+x~-T}(r) + r/T
FracExp lambda_t(int t, const FracExp& x, int r);

struct LemmaBox {
  std::vector<int> Ts{1, 2, 3, 4, 6};
  int range = 6;  ///< integer parts run over [-range, range]
};

struct LemmaResult {
  std::string name;
  std::uint64_t cases = 0;
  std::vector<std::string> counterexamples;  ///< first few, deterministic order
  std::uint64_t failures = 0;
};

struct LemmaReport {
  std::vector<LemmaResult> lemmas;
  std::uint64_t total_cases() const;
  bool ok() const;
};

/// Exhaustive check of the four index lemmas; OpenMP over the outer variable.
LemmaReport verify_index_lemmas(const LemmaBox& box);
/// Single-threaded reference with identical output.
LemmaReport verify_index_lemmas_serial(const LemmaBox& box);

struct BinomialReport {
  std::uint64_t checks = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Coefficients of both sides of the two summation identities, lowest power first.
std::pair<std::vector<Rational>, std::vector<Rational>> binomial_identity_A(unsigned l, const Rational& e, const Rational& f);
std::pair<std::vector<Rational>, std::vector<Rational>> binomial_identity_B(unsigned l, const Rational& e, const Rational& f);

BinomialReport verify_binomial_identities(unsigned l_max, const std::vector<std::pair<Rational, Rational>>& samples);

/// Deterministic pseudo-random rational pairs with denominators in [1, max_den].
std::vector<std::pair<Rational, Rational>> sample_rational_pairs(unsigned count, int max_den, std::uint64_t seed);

}  // namespace twzhu
