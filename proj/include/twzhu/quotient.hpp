#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twzhu/linalg.hpp"
#include "twzhu/vertex.hpp"
#include "twzhu/voa.hpp"
#include "twzhu/zhuprod.hpp"

namespace twzhu {

/// A span computed over a whole mode table, read through a degree cutoff.
/// Representatives are the non-pivot ambient indices of degree <= window. Since a pivot
/// is the latest coordinate of its row, the span meets the window exactly in the rows
/// whose pivot lies in the window.
class Presentation {
 public:
  Presentation() = default;
  Presentation(Subspace S, std::function<FracExp(int)> degree, FracExp window);

  const Subspace& span() const { return S_; }
  const FracExp& window() const { return window_; }
  int dim() const { return static_cast<int>(reps_.size()); }
  int rep(int k) const { return reps_.at(k); }
  const std::vector<int>& reps() const { return reps_; }
  /// Ambient indices of degree <= window.
  const std::vector<int>& ambient_in_window() const { return ambient_w_; }
  /// Rank of the span intersected with the window.
  int rank_in_window() const;
  /// Coordinates of the class of v. InsufficientTable when the reduced vector keeps a
  /// component above the window.
  Vec project(const Vec& v) const;
  bool try_project(const Vec& v, Vec& out) const;
  Vec lift(const Vec& q) const;

 private:
  Subspace S_;
  std::function<FracExp(int)> degree_;
  FracExp window_;
  std::vector<int> reps_;
  std::vector<int> ambient_w_;
  std::map<int, int> coord_;
};

struct SpanOptions {
  FracExp gen_window;    ///< generator pairs (a, v) with wt a + deg v <= gen_window; the table must reach it
  int max_k = 2;         ///< k-s family: 0 <= s <= k <= max_k
  FracExp mixed_param{-1, 1};  ///< mixed-associativity generators with p1, p2 up to this value; negative disables
  bool parallel = true;
};

/// O_{g,n}(V) generators: a o b and L(-1)a + L(0)a.
Subspace span_O_zhu(const Voa& V, const Automorphism& g, const FracExp& n, const SpanOptions& o);
/// Constructive generators of the bimodule kernel: circ_bimod with the k-s family, the
/// L-elements when M1 is the adjoint module, and optionally mixed associativity.
Subspace span_O_bimod(const Quadruple& Q, const FracExp& n, const FracExp& m, const SpanOptions& o);

/// Partial multiplication table on a presentation; entries whose product leaves the
/// window are absent.
using ProductTable = std::vector<std::vector<std::optional<Vec>>>;

struct AlgebraSC {
  Presentation P;
  std::vector<std::string> labels;
  ProductTable mult;
  Vec unit;
  Vec omega;
  int dim() const { return P.dim(); }
  /// Product of coordinate vectors; nullopt if a needed entry is absent.
  std::optional<Vec> multiply(const Vec& x, const Vec& y) const;
};

/// Structure constants of *_{g,n} on V_{<=window} modulo the span. Checks associativity,
/// the unit laws and centrality of [omega] on all defined entries; AxiomViolation otherwise.
AlgebraSC zhu_algebra(const Voa& V, const Automorphism& g, const FracExp& n, const FracExp& window, const SpanOptions& o);

/// An intertwiner together with the windows for its Omega_m space.
struct KernelSource {
  const Intertwiner* I = nullptr;
  FracExp omega_voa_window;
  FracExp omega_module_window;
};

/// Intersection over the sources of ker o^I_{n,m} on M1_{<=window}. No sources: everything.
Subspace kernel_intersection(const Module& M1, const std::vector<KernelSource>& sources, const FracExp& n, const FracExp& m, const FracExp& window);

struct BimoduleSC {
  Presentation P;
  std::vector<std::string> labels;
  AlgebraSC left_alg;   ///< A_{g3,n}
  AlgebraSC right_alg;  ///< A_{g2,m}
  ProductTable left;    ///< left[i][x] = e_i bar-star x
  ProductTable right;   ///< right[x][j] = x underline-star e_j
  int upper_dim = 0;    ///< quotient by the constructive span
  int lower_dim = -1;   ///< quotient by the kernel intersection; -1 without sources
  bool sandwich_ok = true;
  bool stable = false;  ///< dims unchanged when gen_window grows by 1
  int dim() const { return P.dim(); }
};

/// Left and right action constants on M1_{<=window} modulo span_O_bimod, with the
/// bimodule axioms checked on all defined entries (AxiomViolation otherwise).
BimoduleSC bimodule_present(const Quadruple& Q, const FracExp& n, const FracExp& m, const FracExp& window, const SpanOptions& o,
                            const std::vector<KernelSource>& sources = {});

/// A finite-dimensional module over a presented algebra: one matrix per basis element.
struct AModule {
  int dim = 0;
  std::vector<Matrix> rho;
  /// Matrix of an algebra element given in coordinates.
  Matrix action(const Vec& coords) const;
};

/// The degree-m piece of M with [a] acting by o(a) = a_(wt a - 1).
AModule top_module(const AlgebraSC& A, const Module& M, const FracExp& m);
/// NotAModule unless the matrices respect the unit and every defined product.
void check_a_module(const AlgebraSC& A, const AModule& U);

/// The induced admissible module: pieces M1_{<=window}/span (x) U modulo the tensor
/// relation, for degrees 0..maxN, with a_(p) acting through the bar product.
class InducedModule : public Module {
 public:
  InducedModule(std::string name, const Quadruple& Q, const FracExp& m, AlgebraSC A2, AModule U, const FracExp& maxN, const FracExp& window,
                const SpanOptions& o);

  const Voa& voa() const override { return Q_.voa(); }
  const GradedBasis& basis() const override { return basis_; }
  Rational h() const override { return h_; }
  const Automorphism& twist() const override { return Q_.g3; }
  std::string name() const override { return name_; }

  const Quadruple& quadruple() const { return Q_; }
  const FracExp& m() const { return m_; }
  const AModule& seed() const { return U_; }
  const AlgebraSC& algebra() const { return A2_; }
  /// Degree-n piece; ambient index v * dim U + k stands for v (x) u_k.
  const Presentation& piece(const FracExp& n) const;
  /// Global basis indices of the degree-n piece, in coordinate order.
  const std::vector<int>& piece_basis(const FracExp& n) const;
  /// Class of sum c (v (x) u_k) in the degree-n piece, as a global vector.
  Vec project(const FracExp& n, const Vec& tensor) const;
  /// Ambient tensor vector of a global basis element.
  Vec lift(int x) const;

 protected:
  Vec compute(int a, const FracExp& p, int x) const override;

 private:
  std::string name_;
  Quadruple Q_;
  FracExp m_;
  AlgebraSC A2_;
  AModule U_;
  Rational h_;
  GradedBasis basis_;
  std::map<FracExp, Presentation> pieces_;
  std::map<FracExp, std::vector<int>> piece_basis_;
  std::vector<std::pair<FracExp, int>> where_;  // global index -> (degree, coordinate)
};

/// F°(v, z) from M1 into the induced module, on M2 presented as an induced module over
/// (V, 1, g2, g2) with the same seed: v_(n)(b (x) u) = (v underline-star b) (x) u.
class FcircIntertwiner : public Intertwiner {
 public:
  FcircIntertwiner(const Quadruple& Q, const InducedModule& M2, const InducedModule& Mcal);
  const Module& M1() const override { return *Q_.M1; }
  const Module& M2() const override { return M2_; }
  const Module& M3() const override { return M3_; }
  std::string name() const override { return "Fcirc[" + Q_.M1->name() + "," + M2_.name() + "]"; }
  Vec mode(int v, const FracExp& n, int x) const override;
  using Intertwiner::mode;

 private:
  Quadruple Q_;
  const InducedModule& M2_;
  const InducedModule& M3_;
};

/// [L0, v_(n)] = (h3 - h2 + deg v - n - 1) v_(n) on the listed vectors.
CheckReport check_l0_commutator(const Intertwiner& I, const FracExp& m1_window, const FracExp& m2_window);

struct EigenBlock {
  Scalar eigenvalue;
  std::vector<std::vector<Scalar>> vectors;
};

/// Eigenspaces of a square matrix with rational spectrum. NonDiagonalizable when the
/// eigenspaces do not fill the space or an eigenvalue is not rational.
std::vector<EigenBlock> l0_decompose(const Matrix& A);
/// Matrix of L(0) = omega_(1) on the degree-n piece of M, in the order of of_degree(n).
Matrix l0_matrix(const Module& M, const FracExp& n);

/// Per-degree spans (degrees 0..maxN) of the submodule generated by the seed vectors
/// under a_(p) for all VOA basis a up to voa_window.
std::map<FracExp, Subspace> generated_submodule(const Module& M, const std::vector<Vec>& seed, const FracExp& maxN, const FracExp& voa_window);

struct FusionResult {
  int dim = 0;
  int dim_next = 0;  ///< same computation with gen_window + 1
  bool stable = false;
  int tensor_dim = 0;  ///< dim of the degree-m piece of the induced module
};

/// dim Hom over A_{g3,m} from the degree-m piece of the induced module built on M2(m) to
/// M3(m), solving F a_(wt a - 1) = o^{M3}(a) F for all a up to equivariance_window.
FusionResult fusion_upper_bound(const Quadruple& Q, const Module& M2, const Module& M3, const FracExp& m, const FracExp& window, const SpanOptions& o,
                                const FracExp& equivariance_window);

struct PhiReport {
  CheckReport left_identity;   ///< phi+(a bar-star v) = phi+(v) underline-star phi(a)
  CheckReport right_identity;  ///< phi+(v underline-star g1 a) = phi(a) bar-star phi+(v)
  bool span_forward = false;   ///< phi+ of the primed span lies in the span
  bool span_backward = false;
  bool ok() const { return left_identity.ok() && right_identity.ok() && span_forward && span_backward; }
};

/// Both phi identities for a up to voa_window, v up to window, and all p up to max_param;
/// and span transport between (M1, g1, g2, g3) at (n, m) and (M1, g1, g3^-1, g2^-1) at (m, n).
PhiReport phi_bimodule_check(const Quadruple& Q, const FracExp& n, const FracExp& m, const FracExp& voa_window, const FracExp& window,
                             const FracExp& max_param, const SpanOptions& o);

}  // namespace twzhu
