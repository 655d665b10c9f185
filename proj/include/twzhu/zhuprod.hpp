#pragma once

#include <string>
#include <vector>

#include "twzhu/indexcalc.hpp"
#include "twzhu/vertex.hpp"
#include "twzhu/voa.hpp"

namespace twzhu {

/// (M1, g1, g2, g3) with g1 the twist of M1 and g3 = g1 g2 on eigendata.
struct Quadruple {
  const Module* M1 = nullptr;
  Automorphism g1, g2, g3;

  /// g1 is read off M1; g3 is the composite.
  static Quadruple make(const Module& M1, const Automorphism& g2);
  /// Throws ContextMismatch unless g1 is the twist of M1 and g3 = g1 g2.
  void validate() const;
  int T() const { return M1->T(); }
  const Voa& voa() const { return M1->voa(); }
  int j3vee(int a) const { return mod_T(-g1(a) - g2(a), T()); }
};

struct ProductParams {
  FracExp n, m, p;
  static ProductParams left(const FracExp& n, const FracExp& m) { return {n, m, n}; }
  static ProductParams right(const FracExp& n, const FracExp& m) { return {n, m, m}; }
};

/// Res_z z^{-K} (1+z)^alpha Y_M(a, z) v = sum_j binom(alpha, j) a_(j-K) v.
/// Zero when -K is not in the mode class of a.
Vec residue_term(const Module& M, int a, int v, const Rational& alpha, const FracExp& K);

/// Products on V (through the adjoint module).
Vec star_g_n(const Voa& V, int a, int b, const Automorphism& g, const FracExp& n);
Vec circ_g_n(const Voa& V, int a, int b, const Automorphism& g, const FracExp& n);
Vec star_g_n(const Voa& V, const Vec& a, const Vec& b, const Automorphism& g, const FracExp& n);
Vec circ_g_n(const Voa& V, const Vec& a, const Vec& b, const Automorphism& g, const FracExp& n);

/// Left product a bar-star^n_{g3,m,p} v on M1.
Vec barstar(int a, int v, const Quadruple& Q, const ProductParams& P);
Vec barstar(const Vec& a, const Vec& v, const Quadruple& Q, const ProductParams& P);
/// Right product v underline-star^n_{g2,m,p} a on M1, general form with j3vee throughout.
Vec understar(int v, int a, const Quadruple& Q, const ProductParams& P);
Vec understar(const Vec& v, const Vec& a, const Quadruple& Q, const ProductParams& P);

/// Product on V for a in V^{(0, j2)} in the older bimodule normalization.
Vec dj_star(const Voa& V, int a, int b, const Automorphism& g, const ProductParams& P);
Vec dj_star(const Voa& V, const Vec& a, const Vec& b, const Automorphism& g, const ProductParams& P);

/// Res_z (1+z)^{wt a + lambda(m,j2) + s} z^{-(lambda(m,j2) + lambda(n,j3vee) + 2 + k)} Y_{M1}(a, z) v.
Vec circ_bimod(int a, int v, const Quadruple& Q, const FracExp& n, const FracExp& m, int k = 0, int s = 0);

/// L(-1)v + L(0)v + (m + h2 - n - h3)v on M.
Vec l_element(const Module& M, const Vec& v, const FracExp& n, const FracExp& m, const Rational& h2, const Rational& h3);

/// The three mixed-associativity combinations, each expected in the kernel of o^I_{n,m}:
///   a*(b*v) - (a*b)*v,  (v*b)*a - v*(b*a),  (a*v)*b - a*(v*b)
/// with bar products on the left, underline products on the right, and the products
/// inside V taken for the quadruples (V, 1, g3, g3) and (V, 1, g2, g2).
struct MixedElements {
  Vec left_left;
  Vec right_right;
  Vec left_right;
};
MixedElements mixed_associativity(int a, int b, int v, const Quadruple& Q, const FracExp& n, const FracExp& m, const FracExp& p1, const FracExp& p2);

struct CheckReport {
  std::uint64_t cases = 0;
  std::uint64_t failure_count = 0;
  std::vector<std::string> failures;  // first few, deterministic order
  bool ok() const { return failure_count == 0; }
  void fail(std::string s);
  void merge(CheckReport&& o);
};

/// o^I_{n,m}(a bar-star v) v2 = o^{M3}_{n,p}(a) o^I_{p,m}(v) v2 for every row v2 of omega_m.
CheckReport check_transport_left(const Vec& a, const Vec& v, const Quadruple& Q, const ProductParams& P, const Intertwiner& I, const Subspace& omega_m);
/// o^I_{n,m}(v underline-star a) v2 = o^I_{n,p}(v) o^{M2}_{p,m}(a) v2 for every row v2 of omega_m.
CheckReport check_transport_right(const Vec& v, const Vec& a, const Quadruple& Q, const ProductParams& P, const Intertwiner& I, const Subspace& omega_m);

struct TransportGrid {
  FracExp voa_window;     ///< weights of a
  FracExp m1_window;      ///< degrees of v
  FracExp max_param;      ///< n, m, p run over (1/T)N up to this value
  FracExp omega_voa_window;
  FracExp omega_module_window;
  bool parallel = true;
};

/// Both transport identities over all basis a, v and all parameters in the grid.
/// The Omega spaces are computed once per m. OpenMP over (a, v) pairs when parallel.
CheckReport check_transport_grid(const Quadruple& Q, const Intertwiner& I, const TransportGrid& g);

/// Unit laws vac bar-star v = delta_{p,n} v and v underline-star vac = delta_{m,p} v for
/// every basis v of M1 up to `window` and all n, m, p up to max_param.
CheckReport check_vacuum_action(const Quadruple& Q, const FracExp& max_param, const FracExp& window);

}  // namespace twzhu
