#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "twzhu/scalars.hpp"
#include "twzhu/vec.hpp"

namespace twzhu {

struct BasisElement {
  std::string label;
  FracExp deg;
  int j1 = 0;  ///< eigen residue under g1 (VOA elements only)
  int j2 = 0;  ///< eigen residue under g2 (VOA elements only)
};

/// Ordered labeled basis; degrees lie in (1/T)N.
class GradedBasis {
 public:
  explicit GradedBasis(int T) : T_(T) {}

  int add(BasisElement e);
  int T() const { return T_; }
  int size() const { return static_cast<int>(elems_.size()); }
  const BasisElement& operator[](int i) const { return elems_.at(i); }
  /// -1 when absent.
  int find(const std::string& label) const;
  const std::vector<int>& of_degree(const FracExp& d) const;
  /// Indices with degree <= d, ordered by (degree, index).
  std::vector<int> up_to(const FracExp& d) const;
  /// Distinct degrees present, ascending.
  std::vector<FracExp> degrees() const;
  FracExp max_degree() const;

 private:
  int T_;
  std::vector<BasisElement> elems_;
  std::unordered_map<std::string, int> by_label_;
  std::map<FracExp, std::vector<int>> by_degree_;
};

/// A finite-order automorphism acting diagonally on the VOA basis by e^{2 pi i r/T}.
struct Automorphism {
  std::string name;
  int T = 1;
  std::vector<int> eigen;  ///< residue r per VOA basis index

  int operator()(int a) const { return eigen.at(a); }
  bool is_identity() const;
  Automorphism inverse() const;
  Automorphism compose(const Automorphism& o) const;
  bool same_action(const Automorphism& o) const { return T == o.T && eigen == o.eigen; }
};

class Voa;

/// A (twisted) module with a lazily evaluated, cached mode action.
class Module {
 public:
  virtual ~Module() = default;

  virtual const Voa& voa() const = 0;
  virtual const GradedBasis& basis() const = 0;
  virtual Rational h() const = 0;
  virtual const Automorphism& twist() const = 0;
  virtual std::string name() const = 0;

  int T() const { return basis().T(); }
  FracExp deg(int v) const { return basis()[v].deg; }

  /// a_(n) v for VOA basis element a and module basis element v.
  /// Zero off the mode class r/T + Z and below degree 0; InsufficientTable above the window.
  Vec act(int a, const FracExp& n, int v) const;
  /// Linear extension in both arguments.
  Vec act(const Vec& a, const FracExp& n, const Vec& v) const;
  Vec act(int a, const FracExp& n, const Vec& v) const;

  /// Degree of a_(n) v; does not check the window.
  FracExp out_degree(int a, const FracExp& n, int v) const;
  bool in_mode_class(int a, const FracExp& n) const;

 protected:
  virtual Vec compute(int a, const FracExp& n, int v) const = 0;

 private:
  mutable std::mutex cache_mutex_;
  mutable std::map<std::tuple<int, std::int64_t, int>, Vec> cache_;
};

class Voa {
 public:
  Voa(std::string name, GradedBasis basis, int vacuum, Vec omega, Rational central_charge);
  virtual ~Voa() = default;

  const std::string& name() const { return name_; }
  int T() const { return basis_.T(); }
  const GradedBasis& basis() const { return basis_; }
  int vacuum() const { return vacuum_; }
  const Vec& omega() const { return omega_; }
  const Rational& central_charge() const { return c_; }
  std::int64_t wt(int a) const;

  const Module& adjoint() const { return *adjoint_; }
  void set_adjoint(std::unique_ptr<Module> m) { adjoint_ = std::move(m); }

  void add_automorphism(Automorphism g);
  /// Throws SchemaError for unknown names.
  const Automorphism& automorphism(const std::string& name) const;
  std::vector<std::string> automorphism_names() const;
  const Automorphism& identity() const { return automorphism("id"); }

 private:
  std::string name_;
  GradedBasis basis_;
  int vacuum_;
  Vec omega_;
  Rational c_;
  std::unique_ptr<Module> adjoint_;
  std::vector<Automorphism> autos_;
};

struct Window {
  FracExp voa;
  FracExp module;
  /// Cap on the degree of a_(j)b inside associativity checks; negative means the table top.
  FracExp inner{-1, 1};
};

// ---------------------------------------------------------------- table-backed data

/// Mode table read from a file or assembled in memory. Missing entries inside the
/// window are zero.
class TableModule : public Module {
 public:
  TableModule(std::string name, const Voa* V, GradedBasis basis, Rational h, Automorphism twist)
      : name_(std::move(name)), V_(V), basis_(std::move(basis)), h_(h), twist_(std::move(twist)) {}

  const Voa& voa() const override { return *V_; }
  const GradedBasis& basis() const override { return basis_; }
  Rational h() const override { return h_; }
  const Automorphism& twist() const override { return twist_; }
  std::string name() const override { return name_; }

  void set(int a, const FracExp& n, int v, Vec out);
  const std::map<std::tuple<int, std::int64_t, int>, Vec>& entries() const { return table_; }
  void bind_voa(const Voa* V) { V_ = V; }

 protected:
  Vec compute(int a, const FracExp& n, int v) const override;

 private:
  std::string name_;
  const Voa* V_;
  GradedBasis basis_;
  Rational h_;
  Automorphism twist_;
  std::map<std::tuple<int, std::int64_t, int>, Vec> table_;
};

// ---------------------------------------------------------------- built-ins

/// One-dimensional VOA C1 with omega = 0.
std::shared_ptr<Voa> make_trivial_voa(int T);

/// Rank-one Heisenberg VOA M(1) up to weight W, divided-power monomial basis.
/// With T even the involution h -> -h is registered as "theta".
std::shared_ptr<Voa> make_heisenberg(int T, int max_weight);

enum class FockKind { untwisted, theta_twisted };

/// Fock module for the Heisenberg VOA: untwisted with h(0) = momentum, or
/// theta-twisted with half-integer modes and the exponential quadratic correction.
std::shared_ptr<Module> make_fock_module(std::shared_ptr<const Voa> V, FockKind kind, const Rational& momentum, const FracExp& max_degree);

/// Coefficients c_{mn} (m, n <= order) of -log(((1+x)^{1/2} + (1+y)^{1/2}) / 2).
std::vector<std::vector<Rational>> twist_correction_coefficients(int order);

/// Splits a vector into homogeneous components keyed by degree.
std::map<FracExp, Vec> homogeneous_parts(const GradedBasis& B, const Vec& v);

std::string vec_to_string(const GradedBasis& B, const Vec& v);

}  // namespace twzhu
