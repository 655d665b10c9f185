#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "twzhu/linalg.hpp"
#include "twzhu/series.hpp"
#include "twzhu/voa.hpp"

namespace twzhu {

/// Y_M(a, z)v. The window runs from the lowest exponent carrying a nonzero mode up to the
/// exponent whose output degree reaches zero, so every coefficient is exact.
VecSeries vertex_series(const Module& M, int a, int v);

/// x^{L(0)} on VOA vectors: each homogeneous component is multiplied by x^{wt}.
Vec scale_L0(const Voa& V, const Vec& a, const Scalar& x);
/// (1 + z)^{L(0)} a for homogeneous a, as a scalar series times a.
ScalarSeries scale_L0_series(const Voa& V, int a, unsigned jmax);

/// L(k) = omega_(k+1) on M.
Vec virasoro(const Module& M, int k, const Vec& v);
/// e^{sign L(1)} v; a finite sum since L(1) lowers degree.
Vec exp_L1(const Module& M, const Vec& v, int sign = 1);
/// e^{L(1)} e^{sign pi i L(0)} v with the constant e^{sign pi i h} left out.
/// On VOA vectors both signs give phi(a) = e^{L(1)} (-1)^{L(0)} a.
Vec phi_map(const Module& M, const Vec& v, int sign);

/// Omega_n(M) inside M up to `module_window`, testing all VOA basis elements up to `voa_window`.
Subspace omega_space(const Module& M, const FracExp& n, const FracExp& voa_window, const FracExp& module_window);

/// An intertwining operator given through the modes of its shifted operator I°.
class Intertwiner {
 public:
  virtual ~Intertwiner() = default;
  virtual const Module& M1() const = 0;
  virtual const Module& M2() const = 0;
  virtual const Module& M3() const = 0;
  virtual std::string name() const = 0;
  /// v_(n) x of I°(v, z) for basis vectors v of M1 and x of M2.
  virtual Vec mode(int v, const FracExp& n, int x) const = 0;

  Vec mode(const Vec& v, const FracExp& n, const Vec& x) const;
  /// o_k(v) x = v_(deg v - 1 - k) x, extended to inhomogeneous v through its homogeneous parts.
  Vec component(const Vec& v, const FracExp& k, const Vec& x) const;
};

/// The module map Y_M as an intertwiner of type M over (V, M).
class ModuleMapIntertwiner : public Intertwiner {
 public:
  explicit ModuleMapIntertwiner(const Module& M) : M_(M) {}
  const Module& M1() const override { return M_.voa().adjoint(); }
  const Module& M2() const override { return M_; }
  const Module& M3() const override { return M_; }
  std::string name() const override { return "Y[" + M_.name() + "]"; }
  Vec mode(int v, const FracExp& n, int x) const override { return M_.act(v, n, x); }

 private:
  const Module& M_;
};

/// Matrix of o^I_{n,m}(v) on a basis of Omega_m(M2): domain vectors and their images.
struct ComponentMap {
  std::vector<Vec> domain;
  std::vector<Vec> images;
};

ComponentMap o_component(const Intertwiner& I, const Vec& v, const FracExp& n, const FracExp& m, const Subspace& omega_m);

struct AxiomReport {
  std::uint64_t cases = 0;
  std::vector<std::string> failures;  // first few, deterministic order
  std::uint64_t failure_count = 0;
  bool ok() const { return failure_count == 0; }
  void merge(AxiomReport&& o);
};

/// Both sides of the coefficient of z0^x z2^y in
/// (z0+z2)^beta Y_{M3}(a, z0+z2) I°(v, z2) v2 = (z2+z0)^beta I°(Y_{M1}(a, z0) v, z2) v2.
std::pair<Vec, Vec> associativity_sides(const Intertwiner& I, int a, int v, int v2, const FracExp& beta, const FracExp& x, const FracExp& y);
/// Both sides of the coefficient of z1^x z2^y in
/// (z1-z2)^alpha Y_{M3}(a, z1) I°(v, z2) v2 = (-z2+z1)^alpha I°(v, z2) Y_{M2}(a, z1) v2.
std::pair<Vec, Vec> commutativity_sides(const Intertwiner& I, int a, int v, int v2, const FracExp& alpha, const FracExp& x, const FracExp& y);

/// Exponent rule for the associativity check, given (a, v, v2).
using ExponentRule = std::function<FracExp(int a, int v, int v2)>;

struct CheckGrid {
  FracExp voa_window;    ///< weights of a
  FracExp m1_window;     ///< degrees of v
  FracExp m2_window;     ///< degrees of v2
  bool parallel = true;
  /// Cap on the degree of Y_{M1}(a, z0)v coefficients (associativity) or Y_{M2}(a, z1)v2
  /// coefficients (commutativity); negative means the table top.
  FracExp inner{-1, 1};
};

/// All coefficients (x, y) whose intermediate and final degrees stay inside the tables.
AxiomReport check_associativity(const Intertwiner& I, const ExponentRule& beta, const CheckGrid& grid);
AxiomReport check_commutativity(const Intertwiner& I, const ExponentRule& alpha, const CheckGrid& grid);

/// Vacuum, grading and mode-support checks plus the truncated associativity with
/// beta = wt a + lambda(deg v, r) for a in V^r.
AxiomReport validate_module_axioms(const Module& M, const Window& W, bool parallel = true);

/// Both conjugation formulas, coefficientwise, for a in V and v in M within the window.
AxiomReport check_conjugation_L1(const Module& M, int a, int v);

}  // namespace twzhu
