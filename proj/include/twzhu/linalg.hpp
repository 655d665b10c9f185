#pragma once

#include <functional>
#include <map>
#include <vector>

#include "twzhu/vec.hpp"

namespace twzhu {

/// Row-reduced subspace of the span of an ordered list of ambient basis indices.
/// The pivot of a row is its coordinate latest in ambient order, so the non-pivot
/// coordinates (the quotient representatives) are the earliest ones.
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::vector<int> ambient);

  const std::vector<int>& ambient() const { return ambient_; }
  bool in_ambient(int i) const { return pos_.count(i) > 0; }
  int rank() const { return static_cast<int>(rows_.size()); }
  /// Rows in the order their pivots appear in the ambient order.
  std::vector<Vec> rows() const;
  const std::map<int, Vec>& pivot_rows() const { return rows_; }

  /// Adds v to the span; returns true when the rank grew. Throws ContextMismatch if v
  /// has coordinates outside the ambient list.
  bool insert(const Vec& v);
  /// v minus its component along the pivots; zero iff v lies in the span.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const { return reduce(v).empty(); }
  /// Ambient indices that are not pivots, in ambient order.
  std::vector<int> non_pivots() const;
  bool contains_subspace(const Subspace& o) const;

 private:
  void check(const Vec& v) const;
  int pivot_of(const Vec& v) const;

  std::vector<int> ambient_;
  std::map<int, int> pos_;
  std::map<int, Vec> rows_;  // pivot index -> row with coefficient 1 there
};

Subspace row_reduce(const std::vector<Vec>& vectors, std::vector<int> ambient);

/// V_window / S with representatives the non-pivot ambient basis vectors.
class Quotient {
 public:
  Quotient() = default;
  explicit Quotient(Subspace S);

  const Subspace& subspace() const { return S_; }
  int dim() const { return static_cast<int>(reps_.size()); }
  /// Ambient index of the k-th quotient basis vector.
  int rep(int k) const { return reps_.at(k); }
  const std::vector<int>& reps() const { return reps_; }
  /// Coordinates (keyed 0..dim-1) of the class of v.
  Vec project(const Vec& v) const;
  /// Ambient vector of a quotient coordinate vector.
  Vec lift(const Vec& q) const;

 private:
  Subspace S_;
  std::vector<int> reps_;
  std::map<int, int> coord_;
};

/// Kernel of the linear map e_i -> f(e_i) on the listed ambient indices.
Subspace kernel(const std::vector<int>& domain, const std::function<Vec(int)>& f);

/// Dense matrix helpers over Scalar, row-major.
using Matrix = std::vector<std::vector<Scalar>>;

Matrix identity_matrix(int n);
Matrix mat_mul(const Matrix& a, const Matrix& b);
/// Basis of the null space of A (vectors of length = number of columns).
std::vector<std::vector<Scalar>> null_space(const Matrix& A, int cols);
int matrix_rank(const Matrix& A, int cols);

}  // namespace twzhu
