#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "twzhu/errors.hpp"

namespace twzhu {

using Rational = mpq_class;
using Integer = mpz_class;

/// p/q in canonical form (mpq_class(p, q) alone does not reduce).
inline Rational make_rational(long p, long q) {
  Rational r(p, q);
  r.canonicalize();
  return r;
}

/// Parses "p/q" or "p". Throws SchemaError on malformed input or zero denominator.
Rational parse_rational(const std::string& s);
/// Always "p/q", also for integers.
std::string format_rational(const Rational& r);

/// alpha (alpha-1) ... (alpha-j+1) / j!
Rational gen_binomial(const Rational& alpha, unsigned j);

/// An element of (1/T)Z stored as num/T. Arithmetic between different T throws.
class FracExp {
 public:
  FracExp() = default;
  FracExp(std::int64_t num, int T);
  static FracExp integer(std::int64_t k, int T) { return FracExp(k * T, T); }
  /// Throws ContextMismatch when r is not in (1/T)Z.
  static FracExp from_rational(const Rational& r, int T);

  std::int64_t num() const { return num_; }
  int T() const { return T_; }

  std::int64_t floor() const;
  /// T x mod T, in [0, T).
  int tilde() const;
  bool is_integer() const { return tilde() == 0; }
  Rational to_rational() const { return make_rational(num_, T_); }
  std::string str() const;

  FracExp operator+(const FracExp& o) const;
  FracExp operator-(const FracExp& o) const;
  FracExp operator-() const { return FracExp(-num_, T_); }
  FracExp& operator+=(const FracExp& o) { return *this = *this + o; }
  FracExp& operator-=(const FracExp& o) { return *this = *this - o; }
  FracExp plus_int(std::int64_t k) const { return FracExp(num_ + k * T_, T_); }

  bool operator==(const FracExp& o) const;
  std::strong_ordering operator<=>(const FracExp& o) const;

 private:
  void check(const FracExp& o) const;
  std::int64_t num_ = 0;
  int T_ = 1;
};

std::ostream& operator<<(std::ostream& os, const FracExp& e);

/// Element of Q(zeta_N). Rational values are canonically stored with N = 1 so that
/// they combine with any modulus; two non-rational values must share N.
class CycloScalar {
 public:
  CycloScalar() : c_{Rational(0)} {}
  CycloScalar(const Rational& r) : c_{r} { c_[0].canonicalize(); }  // NOLINT(implicit)
  CycloScalar(long v) : c_{Rational(v)} {}   // NOLINT(implicit)
  CycloScalar(int v) : c_{Rational(v)} {}    // NOLINT(implicit)
  /// Coefficients in the power basis 1, z, ..., z^{phi(N)-1}; reduced on construction.
  CycloScalar(int N, std::vector<Rational> coeffs);

  static CycloScalar root_of_unity(std::int64_t k, int N);

  int modulus() const { return N_; }
  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return N_ == 1 && c_[0] == 0; }
  bool is_rational() const { return N_ == 1; }
  const Rational& rational() const;  // throws unless is_rational()

  CycloScalar operator+(const CycloScalar& o) const;
  CycloScalar operator-(const CycloScalar& o) const;
  CycloScalar operator*(const CycloScalar& o) const;
  CycloScalar operator-() const;
  CycloScalar& operator+=(const CycloScalar& o);
  CycloScalar& operator-=(const CycloScalar& o);
  CycloScalar& operator*=(const CycloScalar& o) { return *this = *this * o; }
  CycloScalar inv() const;
  CycloScalar operator/(const CycloScalar& o) const { return *this * o.inv(); }

  bool operator==(const CycloScalar& o) const { return N_ == o.N_ && c_ == o.c_; }
  bool operator!=(const CycloScalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void normalize();
  int N_ = 1;
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const CycloScalar& s);

using Scalar = CycloScalar;

/// Euler phi and the integer coefficients of the N-th cyclotomic polynomial (low degree first).
int euler_phi(int N);
const std::vector<Integer>& cyclotomic_poly(int N);

/// e^{pi i alpha} = zeta_{2T}^{T alpha}.
CycloScalar power_branch(const FracExp& alpha);

}  // namespace twzhu
