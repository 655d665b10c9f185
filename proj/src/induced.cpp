#include <algorithm>
#include <exception>
#include <numeric>
#include <sstream>

#include "twzhu/quotient.hpp"

namespace twzhu {

namespace {

std::vector<FracExp> grid_up_to(const FracExp& top, int T) {
  std::vector<FracExp> out;
  for (std::int64_t k = 0; FracExp(k, T) <= top; ++k) out.emplace_back(k, T);
  return out;
}

FracExp wt_of(const Voa& V, int a) { return FracExp::integer(V.wt(a), V.T()); }

Matrix zero_matrix(int r, int c) { return Matrix(r, std::vector<Scalar>(c)); }

}  // namespace

// ---------------------------------------------------------------- A-modules

Matrix AModule::action(const Vec& coords) const {
  Matrix out = zero_matrix(dim, dim);
  for (const auto& [k, c] : coords)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) out[i][j] = out[i][j] + c * rho.at(k)[i][j];
  return out;
}

AModule top_module(const AlgebraSC& A, const Module& M, const FracExp& m) {
  const std::vector<int>& B = M.basis().of_degree(m);
  std::map<int, int> pos;
  for (std::size_t i = 0; i < B.size(); ++i) pos[B[i]] = static_cast<int>(i);
  AModule U;
  U.dim = static_cast<int>(B.size());
  const Voa& V = M.voa();
  for (int r : A.P.reps()) {
    Matrix rho = zero_matrix(U.dim, U.dim);
    const FracExp mode = wt_of(V, r).plus_int(-1);
    for (int j = 0; j < U.dim; ++j)
      for (const auto& [i, c] : M.act(r, mode, B[j])) rho[pos.at(i)][j] = c;
    U.rho.push_back(std::move(rho));
  }
  return U;
}

void check_a_module(const AlgebraSC& A, const AModule& U) {
  if (static_cast<int>(U.rho.size()) != A.dim()) throw NotAModule("expected one matrix per algebra basis element");
  for (const Matrix& r : U.rho) {
    if (static_cast<int>(r.size()) != U.dim) throw NotAModule("action matrix of the wrong size");
    for (const auto& row : r)
      if (static_cast<int>(row.size()) != U.dim) throw NotAModule("action matrix of the wrong size");
  }
  if (U.action(A.unit) != identity_matrix(U.dim)) throw NotAModule("[vac] does not act as the identity");
  for (int i = 0; i < A.dim(); ++i)
    for (int j = 0; j < A.dim(); ++j) {
      const auto& e = A.mult[i][j];
      if (!e) continue;
      if (mat_mul(U.rho[i], U.rho[j]) != U.action(*e))
        throw NotAModule("action does not respect [" + A.labels[i] + "] * [" + A.labels[j] + "]");
    }
}

// ---------------------------------------------------------------- induced module

InducedModule::InducedModule(std::string name, const Quadruple& Q, const FracExp& m, AlgebraSC A2, AModule U, const FracExp& maxN,
                             const FracExp& window, const SpanOptions& o)
    : name_(std::move(name)), Q_(Q), m_(m), A2_(std::move(A2)), U_(std::move(U)), basis_(Q.T()) {
  Q_.validate();
  check_a_module(A2_, U_);
  if (U_.dim == 0) throw NotAModule("zero-dimensional seed");
  const Module& M1 = *Q_.M1;
  const Voa& V = Q_.voa();
  const int d = U_.dim;
  const int T = Q_.T();

  Matrix w = A2_.omega.empty() ? zero_matrix(d, d) : U_.action(A2_.omega);
  const Scalar c = w[0][0];
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (w[i][j] != (i == j ? c : Scalar(0))) throw NonhomogeneousWeight("[omega] does not act on the seed by a scalar");
  if (!c.is_rational()) throw NonhomogeneousWeight("[omega] eigenvalue on the seed is not rational");
  h_ = c.rational() - m.to_rational();

  const FracExp& G = o.gen_window;
  const std::vector<int> vs = M1.basis().up_to(G);
  std::vector<int> ambient;
  for (int v : M1.basis().up_to(M1.basis().max_degree()))
    for (int k = 0; k < d; ++k) ambient.push_back(v * d + k);
  auto degree = [&M1, d](int i) { return M1.deg(i / d); };

  struct Job {
    int v, b;
  };
  std::vector<Job> jobs;
  for (int v : vs)
    for (int b : V.basis().up_to(G))
      if (M1.deg(v) + wt_of(V, b) <= G) jobs.push_back({v, b});

  for (const FracExp& n : grid_up_to(maxN, T)) {
    Subspace X(ambient);
    for (const Vec& row : span_O_bimod(Q_, n, m, o).rows())
      for (int k = 0; k < d; ++k) {
        Vec t;
        for (const auto& [i, c] : row) t.add(i * d + k, c);
        X.insert(t);
      }
    // v underline-star b (x) u - v (x) b u
    std::vector<std::vector<Vec>> rel(jobs.size());
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (o.parallel)
    for (std::size_t j = 0; j < jobs.size(); ++j) {
      try {
        Vec coords;
        if (!A2_.P.try_project(Vec::unit(jobs[j].b), coords)) continue;
        Vec prod = understar(jobs[j].v, jobs[j].b, Q_, {n, m, m});
        Matrix act = U_.action(coords);
        for (int k = 0; k < d; ++k) {
          Vec t;
          for (const auto& [i, c] : prod) t.add(i * d + k, c);
          for (int l = 0; l < d; ++l)
            if (!act[l][k].is_zero()) t.add(jobs[j].v * d + l, -act[l][k]);
          rel[j].push_back(std::move(t));
        }
      } catch (const InsufficientTable&) {
      } catch (...) {
#pragma omp critical(twzhu_induced_err)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    for (const auto& batch : rel)
      for (const Vec& t : batch) X.insert(t);

    Presentation P(std::move(X), degree, window);
    std::vector<int>& ids = piece_basis_[n];
    for (int r : P.reps()) {
      std::ostringstream label;
      label << M1.basis()[r / d].label;
      if (d > 1) label << "#" << r % d;
      label << "@" << n.str();
      int g = basis_.add({label.str(), n});
      ids.push_back(g);
      where_.emplace_back(n, static_cast<int>(ids.size()) - 1);
    }
    pieces_.emplace(n, std::move(P));
  }
}

const Presentation& InducedModule::piece(const FracExp& n) const {
  auto it = pieces_.find(n);
  if (it == pieces_.end()) throw InsufficientTable(name_ + ": no piece of degree " + n.str());
  return it->second;
}

const std::vector<int>& InducedModule::piece_basis(const FracExp& n) const {
  static const std::vector<int> empty;
  auto it = piece_basis_.find(n);
  return it == piece_basis_.end() ? empty : it->second;
}

Vec InducedModule::project(const FracExp& n, const Vec& tensor) const {
  Vec q = piece(n).project(tensor);
  const std::vector<int>& ids = piece_basis(n);
  Vec out;
  for (const auto& [k, c] : q) out.add(ids.at(k), c);
  return out;
}

Vec InducedModule::lift(int x) const {
  const auto& [n, k] = where_.at(x);
  return piece(n).lift(Vec::unit(k));
}

Vec InducedModule::compute(int a, const FracExp& p, int x) const {
  const int d = U_.dim;
  const FracExp n = deg(x);
  const FracExp np = out_degree(a, p, x);
  Vec t;
  for (const auto& [idx, c] : lift(x)) {
    Vec w = barstar(a, idx / d, Q_, {np, m_, n});
    for (const auto& [i, ci] : w) t.add(i * d + idx % d, c * ci);
  }
  return project(np, t);
}

// ---------------------------------------------------------------- F°

FcircIntertwiner::FcircIntertwiner(const Quadruple& Q, const InducedModule& M2, const InducedModule& Mcal) : Q_(Q), M2_(M2), M3_(Mcal) {
  Q_.validate();
  const Voa& V = Q_.voa();
  if (M2_.quadruple().M1 != &V.adjoint() || !M2_.quadruple().g2.same_action(Q_.g2))
    throw ContextMismatch("M2 must be induced from V over (V, 1, g2, g2)");
  if (!Mcal.quadruple().g3.same_action(Q_.g3) || Mcal.quadruple().M1 != Q_.M1) throw ContextMismatch("target is not induced over the quadruple");
  if (M2_.seed().dim != M3_.seed().dim || M2_.m() != M3_.m()) throw ContextMismatch("M2 and the induced module use different seeds");
}

Vec FcircIntertwiner::mode(int v, const FracExp& n, int x) const {
  const FracExp p = M2_.deg(x);
  const FracExp pp = p + Q_.M1->deg(v) - n - FracExp::integer(1, n.T());
  if (pp < FracExp(0, n.T())) return {};
  if (pp > M3_.basis().max_degree())
    throw InsufficientTable(name() + ": mode lands in degree " + pp.str() + " beyond " + M3_.basis().max_degree().str());
  const int d = M2_.seed().dim;
  Vec t;
  for (const auto& [idx, c] : M2_.lift(x)) {
    Vec w = understar(v, idx / d, Q_, {pp, M2_.m(), p});
    for (const auto& [i, ci] : w) t.add(i * d + idx % d, c * ci);
  }
  return M3_.project(pp, t);
}

CheckReport check_l0_commutator(const Intertwiner& I, const FracExp& m1_window, const FracExp& m2_window) {
  const Module& M1 = I.M1();
  const Module& M2 = I.M2();
  const Module& M3 = I.M3();
  const int T = M1.T();
  const Rational shift = M3.h() - M2.h();
  CheckReport rep;
  for (int v : M1.basis().up_to(m1_window))
    for (int x : M2.basis().up_to(m2_window))
      for (const FracExp& out : grid_up_to(M3.basis().max_degree(), T)) {
        const FracExp n = M2.deg(x) + M1.deg(v) - out - FracExp::integer(1, T);
        const Vec y = I.mode(Vec::unit(v), n, Vec::unit(x));
        const Vec lhs = virasoro(M3, 0, y) - I.mode(Vec::unit(v), n, virasoro(M2, 0, Vec::unit(x)));
        const Rational k = shift + (M1.deg(v) - n).to_rational() - 1;
        ++rep.cases;
        if (lhs != y.scaled(Scalar(k)))
          rep.fail("[L0, v_(n)] v=" + M1.basis()[v].label + " n=" + n.str() + " x=" + M2.basis()[x].label + ": " + vec_to_string(M3.basis(), lhs));
      }
  return rep;
}

// ---------------------------------------------------------------- L0 blocks

Matrix l0_matrix(const Module& M, const FracExp& n) {
  const std::vector<int>& B = M.basis().of_degree(n);
  std::map<int, int> pos;
  for (std::size_t i = 0; i < B.size(); ++i) pos[B[i]] = static_cast<int>(i);
  Matrix A = zero_matrix(static_cast<int>(B.size()), static_cast<int>(B.size()));
  for (std::size_t j = 0; j < B.size(); ++j)
    for (const auto& [i, c] : virasoro(M, 0, Vec::unit(B[j]))) A[pos.at(i)][j] = c;
  return A;
}

namespace {

using Poly = std::vector<Rational>;  // lowest degree first

/// Characteristic polynomial det(xI - A) by Faddeev-LeVerrier.
Poly char_poly(const std::vector<std::vector<Rational>>& A) {
  const int n = static_cast<int>(A.size());
  Poly c(n + 1);
  c[n] = 1;
  std::vector<std::vector<Rational>> M(n, std::vector<Rational>(n));
  for (int k = 1; k <= n; ++k) {
    // M <- A M + c_{n-k+1} I
    std::vector<std::vector<Rational>> AM(n, std::vector<Rational>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational s = 0;
        for (int l = 0; l < n; ++l) s += A[i][l] * M[l][j];
        AM[i][j] = s + (i == j ? c[n - k + 1] : Rational(0));
      }
    M = AM;
    Rational tr = 0;
    for (int i = 0; i < n; ++i)
      for (int l = 0; l < n; ++l) tr += A[i][l] * M[l][i];
    c[n - k] = -tr / k;
  }
  return c;
}

Rational eval(const Poly& p, const Rational& x) {
  Rational r = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

Poly divide_root(const Poly& p, const Rational& x) {
  const int n = static_cast<int>(p.size()) - 1;
  Poly q(n);
  Rational carry = 0;
  for (int k = n; k >= 1; --k) {
    carry = p[k] + carry * x;
    q[k - 1] = carry;
  }
  return q;
}

std::vector<Integer> divisors(Integer v) {
  if (v < 0) v = -v;
  std::vector<Integer> out;
  for (Integer k = 1; k * k <= v; ++k)
    if (v % k == 0) {
      out.push_back(k);
      if (k * k != v) out.push_back(v / k);
    }
  return out;
}

/// Rational roots with multiplicity.
std::vector<Rational> rational_roots(Poly p) {
  std::vector<Rational> roots;
  while (p.size() > 1 && p[0] == 0) {
    roots.push_back(0);
    p.erase(p.begin());
  }
  if (p.size() <= 1) return roots;
  Integer lcm = 1;
  for (const Rational& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> z;
  for (const Rational& c : p) z.push_back(Integer(c * lcm));
  std::vector<Rational> cands;
  for (const Integer& a : divisors(z.front()))
    for (const Integer& b : divisors(z.back())) {
      Rational r(a, b);
      r.canonicalize();
      cands.push_back(r);
      cands.push_back(-r);
    }
  for (const Rational& r : cands)
    while (p.size() > 1 && eval(p, r) == 0) {
      roots.push_back(r);
      p = divide_root(p, r);
    }
  return roots;
}

}  // namespace

std::vector<EigenBlock> l0_decompose(const Matrix& A) {
  const int n = static_cast<int>(A.size());
  std::vector<std::vector<Rational>> Q(n, std::vector<Rational>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(A[i].size()) != n) throw NonDiagonalizable("matrix is not square");
    for (int j = 0; j < n; ++j) {
      if (!A[i][j].is_rational()) throw NonDiagonalizable("non-rational matrix entry");
      Q[i][j] = A[i][j].rational();
    }
  }
  std::vector<Rational> roots = rational_roots(char_poly(Q));
  if (static_cast<int>(roots.size()) != n) throw NonDiagonalizable("spectrum is not rational");
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  std::vector<EigenBlock> out;
  int total = 0;
  for (const Rational& r : roots) {
    Matrix B = A;
    for (int i = 0; i < n; ++i) B[i][i] = B[i][i] - Scalar(r);
    EigenBlock blk{Scalar(r), null_space(B, n)};
    total += static_cast<int>(blk.vectors.size());
    out.push_back(std::move(blk));
  }
  if (total != n) throw NonDiagonalizable("eigenspaces span " + std::to_string(total) + " of " + std::to_string(n) + " dimensions");
  return out;
}

// ---------------------------------------------------------------- submodules and fusion

std::map<FracExp, Subspace> generated_submodule(const Module& M, const std::vector<Vec>& seed, const FracExp& maxN, const FracExp& voa_window) {
  const int T = M.T();
  const Voa& V = M.voa();
  std::map<FracExp, Subspace> out;
  for (const FracExp& d : grid_up_to(maxN, T)) out.emplace(d, Subspace(M.basis().of_degree(d)));
  std::vector<std::pair<FracExp, Vec>> work;
  auto add = [&](const Vec& v) {
    for (auto& [d, part] : homogeneous_parts(M.basis(), v)) {
      auto it = out.find(d);
      if (it != out.end() && it->second.insert(part)) work.emplace_back(d, part);
    }
  };
  for (const Vec& s : seed) add(s);
  const std::vector<int> as = V.basis().up_to(voa_window);
  while (!work.empty()) {
    auto [d, w] = work.back();
    work.pop_back();
    for (int a : as)
      for (const FracExp& e : grid_up_to(maxN, T)) {
        const FracExp p = d + wt_of(V, a) - FracExp::integer(1, T) - e;
        if (!M.in_mode_class(a, p)) continue;
        add(M.act(a, p, w));
      }
  }
  return out;
}

namespace {

int fusion_dim(const Quadruple& Q, const Module& M2, const Module& M3, const FracExp& m, const FracExp& window, const SpanOptions& o,
               const FracExp& eq_window, int* tensor_dim) {
  const Voa& V = Q.voa();
  AlgebraSC A2 = zhu_algebra(V, Q.g2, m, window, o);
  AModule U = top_module(A2, M2, m);
  InducedModule X("tensor", Q, m, A2, U, m, window, o);
  const std::vector<int>& XB = X.piece_basis(m);
  const std::vector<int>& B3 = M3.basis().of_degree(m);
  const int dx = static_cast<int>(XB.size()), d3 = static_cast<int>(B3.size());
  if (tensor_dim) *tensor_dim = dx;
  std::map<int, int> xpos, pos3;
  for (int i = 0; i < dx; ++i) xpos[XB[i]] = i;
  for (int i = 0; i < d3; ++i) pos3[B3[i]] = i;
  // Unknown F[r][c] sits in column r * dx + c.
  Matrix eqs;
  for (int a : V.basis().up_to(eq_window)) {
    const FracExp mode = wt_of(V, a).plus_int(-1);
    Matrix L = zero_matrix(dx, dx), R = zero_matrix(d3, d3);
    for (int c = 0; c < dx; ++c)
      for (const auto& [i, v] : X.act(a, mode, XB[c])) L[xpos.at(i)][c] = v;
    for (int c = 0; c < d3; ++c)
      for (const auto& [i, v] : M3.act(a, mode, B3[c])) R[pos3.at(i)][c] = v;
    for (int r = 0; r < d3; ++r)
      for (int c = 0; c < dx; ++c) {
        std::vector<Scalar> row(d3 * dx);
        for (int k = 0; k < dx; ++k) row[r * dx + k] = row[r * dx + k] + L[k][c];
        for (int k = 0; k < d3; ++k) row[k * dx + c] = row[k * dx + c] - R[r][k];
        eqs.push_back(std::move(row));
      }
  }
  return d3 * dx - matrix_rank(eqs, d3 * dx);
}

}  // namespace

FusionResult fusion_upper_bound(const Quadruple& Q, const Module& M2, const Module& M3, const FracExp& m, const FracExp& window, const SpanOptions& o,
                                const FracExp& equivariance_window) {
  FusionResult r;
  r.dim = fusion_dim(Q, M2, M3, m, window, o, equivariance_window, &r.tensor_dim);
  SpanOptions next = o;
  next.gen_window = o.gen_window.plus_int(1);
  if (next.gen_window <= Q.M1->basis().max_degree() && next.gen_window <= Q.voa().basis().max_degree()) {
    r.dim_next = fusion_dim(Q, M2, M3, m, window, next, equivariance_window, nullptr);
    r.stable = r.dim_next == r.dim;
  } else {
    r.dim_next = -1;
  }
  return r;
}

}  // namespace twzhu
