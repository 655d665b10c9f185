#include "twzhu/linalg.hpp"

#include <algorithm>

namespace twzhu {

Subspace::Subspace(std::vector<int> ambient) : ambient_(std::move(ambient)) {
  for (std::size_t k = 0; k < ambient_.size(); ++k)
    if (!pos_.emplace(ambient_[k], static_cast<int>(k)).second) throw ContextMismatch("repeated ambient index");
}

void Subspace::check(const Vec& v) const {
  for (const auto& [i, c] : v)
    if (!pos_.count(i)) throw ContextMismatch("vector has a coordinate outside the ambient window");
}

int Subspace::pivot_of(const Vec& v) const {
  int best = -1, best_pos = -1;
  for (const auto& [i, c] : v) {
    int p = pos_.at(i);
    if (p > best_pos) {
      best_pos = p;
      best = i;
    }
  }
  return best;
}

Vec Subspace::reduce(const Vec& v) const {
  Vec r = v;
  for (const auto& [i, c] : v) {
    auto it = rows_.find(i);
    if (it != rows_.end()) r.axpy(-c, it->second);
  }
  return r;
}

bool Subspace::insert(const Vec& v) {
  check(v);
  Vec r = reduce(v);
  if (r.empty()) return false;
  int p = pivot_of(r);
  r = r.scaled(r.at(p).inv());
  for (auto& [q, row] : rows_) {
    Scalar c = row.at(p);
    if (!c.is_zero()) row.axpy(-c, r);
  }
  rows_.emplace(p, std::move(r));
  return true;
}

std::vector<Vec> Subspace::rows() const {
  std::vector<std::pair<int, const Vec*>> order;
  for (const auto& [p, row] : rows_) order.emplace_back(pos_.at(p), &row);
  std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec> out;
  for (const auto& [k, row] : order) out.push_back(*row);
  return out;
}

std::vector<int> Subspace::non_pivots() const {
  std::vector<int> out;
  for (int i : ambient_)
    if (!rows_.count(i)) out.push_back(i);
  return out;
}

bool Subspace::contains_subspace(const Subspace& o) const {
  for (const auto& [p, row] : o.rows_) {
    for (const auto& [i, c] : row)
      if (!pos_.count(i)) return false;
    if (!contains(row)) return false;
  }
  return true;
}

Subspace row_reduce(const std::vector<Vec>& vectors, std::vector<int> ambient) {
  Subspace S(std::move(ambient));
  for (const auto& v : vectors) S.insert(v);
  return S;
}

Quotient::Quotient(Subspace S) : S_(std::move(S)), reps_(S_.non_pivots()) {
  for (std::size_t k = 0; k < reps_.size(); ++k) coord_[reps_[k]] = static_cast<int>(k);
}

Vec Quotient::project(const Vec& v) const {
  for (const auto& [i, c] : v)
    if (!S_.in_ambient(i)) throw InsufficientTable("vector leaves the quotient window");
  Vec r = S_.reduce(v);
  Vec out;
  for (const auto& [i, c] : r) out.add(coord_.at(i), c);
  return out;
}

Vec Quotient::lift(const Vec& q) const {
  Vec out;
  for (const auto& [k, c] : q) out.add(reps_.at(k), c);
  return out;
}

Subspace kernel(const std::vector<int>& domain, const std::function<Vec(int)>& f) {
  // Pivot rows on the image side, each remembering its preimage combination.
  std::map<int, std::pair<Vec, Vec>> piv;
  std::vector<Vec> ker;
  for (int i : domain) {
    Vec img = f(i);
    Vec pre = Vec::unit(i);
    // Rows are kept fully reduced, so one pass over the original support suffices.
    Vec snapshot = img;
    for (const auto& [k, c] : snapshot) {
      auto it = piv.find(k);
      if (it == piv.end()) continue;
      Scalar cc = img.at(k);
      if (cc.is_zero()) continue;
      img.axpy(-cc, it->second.first);
      pre.axpy(-cc, it->second.second);
    }
    if (img.empty()) {
      ker.push_back(std::move(pre));
      continue;
    }
    int p = img.begin()->first;
    Scalar inv = img.begin()->second.inv();
    img = img.scaled(inv);
    pre = pre.scaled(inv);
    for (auto& [q, row] : piv) {
      Scalar c = row.first.at(p);
      if (c.is_zero()) continue;
      row.first.axpy(-c, img);
      row.second.axpy(-c, pre);
    }
    piv.emplace(p, std::make_pair(std::move(img), std::move(pre)));
  }
  return row_reduce(ker, domain);
}

Matrix identity_matrix(int n) {
  Matrix m(n, std::vector<Scalar>(n));
  for (int i = 0; i < n; ++i) m[i][i] = Scalar(1);
  return m;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  if (a.empty()) return {};
  const std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  Matrix r(n, std::vector<Scalar>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j)
        if (!b[l][j].is_zero()) r[i][j] += a[i][l] * b[l][j];
    }
  return r;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> rref(Matrix& A, int cols) {
  std::vector<int> pivots;
  std::size_t row = 0;
  for (int c = 0; c < cols && row < A.size(); ++c) {
    std::size_t sel = row;
    while (sel < A.size() && A[sel][c].is_zero()) ++sel;
    if (sel == A.size()) continue;
    std::swap(A[sel], A[row]);
    Scalar inv = A[row][c].inv();
    for (auto& x : A[row]) x *= inv;
    for (std::size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][c].is_zero()) continue;
      Scalar f = A[r][c];
      for (int j = 0; j < cols; ++j)
        if (!A[row][j].is_zero()) A[r][j] -= f * A[row][j];
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

std::vector<std::vector<Scalar>> null_space(const Matrix& A0, int cols) {
  Matrix A = A0;
  std::vector<int> piv = rref(A, cols);
  std::vector<bool> is_piv(cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<std::vector<Scalar>> out;
  for (int f = 0; f < cols; ++f) {
    if (is_piv[f]) continue;
    std::vector<Scalar> v(cols);
    v[f] = Scalar(1);
    for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -A[r][f];
    out.push_back(std::move(v));
  }
  return out;
}

int matrix_rank(const Matrix& A0, int cols) {
  Matrix A = A0;
  return static_cast<int>(rref(A, cols).size());
}

}  // namespace twzhu
