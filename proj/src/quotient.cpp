#include "twzhu/quotient.hpp"

#include <exception>
#include <sstream>

namespace twzhu {

// ---------------------------------------------------------------- Presentation

Presentation::Presentation(Subspace S, std::function<FracExp(int)> degree, FracExp window)
    : S_(std::move(S)), degree_(std::move(degree)), window_(window) {
  for (int i : S_.ambient())
    if (degree_(i) <= window_) ambient_w_.push_back(i);
  for (int i : ambient_w_)
    if (!S_.pivot_rows().count(i)) {
      coord_[i] = static_cast<int>(reps_.size());
      reps_.push_back(i);
    }
}

int Presentation::rank_in_window() const { return static_cast<int>(ambient_w_.size() - reps_.size()); }

bool Presentation::try_project(const Vec& v, Vec& out) const {
  Vec r = S_.reduce(v);
  Vec q;
  for (const auto& [i, c] : r) {
    auto it = coord_.find(i);
    if (it == coord_.end()) return false;
    q.add(it->second, c);
  }
  out = std::move(q);
  return true;
}

Vec Presentation::project(const Vec& v) const {
  Vec out;
  if (!try_project(v, out)) throw InsufficientTable("class of a vector needs coordinates above the presentation window " + window_.str());
  return out;
}

Vec Presentation::lift(const Vec& q) const {
  Vec out;
  for (const auto& [k, c] : q) out.add(reps_.at(k), c);
  return out;
}

// ---------------------------------------------------------------- generator spans

namespace {

constexpr std::size_t kKeptFailures = 10;

/// Runs f over the jobs, dropping jobs whose evaluation leaves the table. Any other
/// error is rethrown after the loop.
template <class Job, class F>
std::vector<std::vector<Vec>> evaluate(const std::vector<Job>& jobs, F f, bool parallel) {
  std::vector<std::vector<Vec>> out(jobs.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    try {
      out[k] = f(jobs[k]);
    } catch (const InsufficientTable&) {
      out[k].clear();
    } catch (...) {
#pragma omp critical(twzhu_quotient_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

/// Generators are row-reduced over the whole table.
Subspace collect(const Module& M, const std::vector<std::vector<Vec>>& gens) {
  Subspace S(M.basis().up_to(M.basis().max_degree()));
  for (const auto& batch : gens)
    for (const Vec& g : batch)
      if (!g.empty()) S.insert(g);
  return S;
}

void require_table(const Module& M, const FracExp& G) {
  if (M.basis().max_degree() < G)
    throw InsufficientTable(M.name() + ": generator window " + G.str() + " exceeds the table, which ends at " + M.basis().max_degree().str());
}

std::vector<FracExp> grid_up_to(const FracExp& top, int T) {
  std::vector<FracExp> out;
  for (std::int64_t k = 0; FracExp(k, T) <= top; ++k) out.emplace_back(k, T);
  return out;
}

FracExp wt_of(const Voa& V, int a) { return FracExp::integer(V.wt(a), V.T()); }

}  // namespace

Subspace span_O_zhu(const Voa& V, const Automorphism& g, const FracExp& n, const SpanOptions& o) {
  const Module& A = V.adjoint();
  const FracExp& G = o.gen_window;
  require_table(A, G);
  const std::vector<int> basis = V.basis().up_to(G);
  struct Job {
    int a, b;  // b < 0: L(-1)a + L(0)a
  };
  std::vector<Job> jobs;
  for (int a : basis) {
    if (wt_of(V, a).plus_int(1) <= G) jobs.push_back({a, -1});
    for (int b : basis)
      if (wt_of(V, a) + wt_of(V, b) <= G) jobs.push_back({a, b});
  }
  auto gens = evaluate(
      jobs,
      [&](const Job& j) -> std::vector<Vec> {
        if (j.b >= 0) return {circ_g_n(V, j.a, j.b, g, n)};
        Vec e = virasoro(A, -1, Vec::unit(j.a));
        e.add(j.a, Scalar(Rational(V.wt(j.a))));
        return {e};
      },
      o.parallel);
  return collect(A, gens);
}

Subspace span_O_bimod(const Quadruple& Q, const FracExp& n, const FracExp& m, const SpanOptions& o) {
  Q.validate();
  const Module& M1 = *Q.M1;
  const Voa& V = Q.voa();
  const int T = Q.T();
  const FracExp& G = o.gen_window;
  require_table(M1, G);
  const bool adjoint = &M1 == &V.adjoint();
  const std::vector<int> vs = M1.basis().up_to(G);
  const std::vector<int> as = V.basis().up_to(G);
  const std::vector<FracExp> ps = o.mixed_param.num() < 0 ? std::vector<FracExp>{} : grid_up_to(o.mixed_param, T);

  struct Job {
    enum Kind { circ, lel, mixed } kind;
    int a, b, v, k, s;
    FracExp p1, p2;
  };
  std::vector<Job> jobs;
  const FracExp zero(0, T);
  for (int v : vs) {
    if (adjoint && M1.deg(v).plus_int(1) <= G) jobs.push_back({Job::lel, -1, -1, v, 0, 0, zero, zero});
    for (int a : as) {
      if (wt_of(V, a) + M1.deg(v) > G) continue;
      for (int k = 0; k <= o.max_k; ++k)
        for (int s = 0; s <= k; ++s) jobs.push_back({Job::circ, a, -1, v, k, s, zero, zero});
      for (int b : as) {
        if (wt_of(V, a) + wt_of(V, b) + M1.deg(v) > G) continue;
        for (const FracExp& p1 : ps)
          for (const FracExp& p2 : ps) jobs.push_back({Job::mixed, a, b, v, 0, 0, p1, p2});
      }
    }
  }
  const Rational h(0);
  auto gens = evaluate(
      jobs,
      [&](const Job& j) -> std::vector<Vec> {
        switch (j.kind) {
          case Job::circ:
            return {circ_bimod(j.a, j.v, Q, n, m, j.k, j.s)};
          case Job::lel:
            return {l_element(M1, Vec::unit(j.v), n, m, h, h)};
          case Job::mixed: {
            MixedElements e = mixed_associativity(j.a, j.b, j.v, Q, n, m, j.p1, j.p2);
            return {e.left_left, e.right_right, e.left_right};
          }
        }
        return {};
      },
      o.parallel);
  return collect(M1, gens);
}

// ---------------------------------------------------------------- algebras

std::optional<Vec> AlgebraSC::multiply(const Vec& x, const Vec& y) const {
  Vec out;
  for (const auto& [i, cx] : x)
    for (const auto& [j, cy] : y) {
      const auto& e = mult.at(i).at(j);
      if (!e) return std::nullopt;
      out.axpy(cx * cy, *e);
    }
  return out;
}

namespace {

std::optional<Vec> try_class(const Presentation& P, const std::function<Vec()>& f) {
  try {
    Vec out;
    if (P.try_project(f(), out)) return out;
  } catch (const InsufficientTable&) {
  }
  return std::nullopt;
}

ProductTable table(int rows, int cols, const std::function<std::optional<Vec>(int, int)>& f, bool parallel) {
  ProductTable t(rows, std::vector<std::optional<Vec>>(cols));
  std::exception_ptr err;
#pragma omp parallel for collapse(2) schedule(dynamic) if (parallel)
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      try {
        t[i][j] = f(i, j);
      } catch (...) {
#pragma omp critical(twzhu_table_err)
        if (!err) err = std::current_exception();
      }
    }
  if (err) std::rethrow_exception(err);
  return t;
}

std::vector<std::string> rep_labels(const Module& M, const Presentation& P) {
  std::vector<std::string> out;
  for (int r : P.reps()) out.push_back(M.basis()[r].label);
  return out;
}

std::function<FracExp(int)> degree_of(const Module& M) {
  return [&M](int i) { return M.deg(i); };
}

/// Linear extension of a partial bilinear table; nullopt when an entry is missing.
std::optional<Vec> contract(const ProductTable& t, const Vec& x, const Vec& y) {
  Vec out;
  for (const auto& [i, cx] : x)
    for (const auto& [j, cy] : y) {
      const auto& e = t.at(i).at(j);
      if (!e) return std::nullopt;
      out.axpy(cx * cy, *e);
    }
  return out;
}

struct Failures {
  std::vector<std::string> items;
  void add(std::string s) {
    if (items.size() < kKeptFailures) items.push_back(std::move(s));
  }
  void expect(const std::optional<Vec>& x, const std::optional<Vec>& y, const std::string& what) {
    if (x && y && *x != *y) add(what);
  }
  void raise(const std::string& context) const {
    if (items.empty()) return;
    std::ostringstream os;
    os << context << ": " << items.front();
    if (items.size() > 1) os << " (and " << items.size() - 1 << " more)";
    throw AxiomViolation(os.str());
  }
};

}  // namespace

AlgebraSC zhu_algebra(const Voa& V, const Automorphism& g, const FracExp& n, const FracExp& window, const SpanOptions& o) {
  const Module& A = V.adjoint();
  AlgebraSC alg;
  alg.P = Presentation(span_O_zhu(V, g, n, o), degree_of(A), window);
  alg.labels = rep_labels(A, alg.P);
  const int d = alg.dim();
  alg.mult = table(
      d, d, [&](int i, int j) { return try_class(alg.P, [&] { return star_g_n(V, alg.P.rep(i), alg.P.rep(j), g, n); }); }, o.parallel);
  alg.unit = alg.P.project(Vec::unit(V.vacuum()));
  alg.P.try_project(V.omega(), alg.omega);

  Failures f;
  for (int i = 0; i < d; ++i) {
    const Vec ei = Vec::unit(i);
    f.expect(alg.multiply(alg.unit, ei), ei, "left unit on " + alg.labels[i]);
    f.expect(alg.multiply(ei, alg.unit), ei, "right unit on " + alg.labels[i]);
    f.expect(alg.multiply(alg.omega, ei), alg.multiply(ei, alg.omega), "[omega] does not commute with " + alg.labels[i]);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const auto& ij = alg.mult[i][j];
        const auto& jk = alg.mult[j][k];
        if (!ij || !jk) continue;
        f.expect(alg.multiply(*ij, Vec::unit(k)), alg.multiply(ei, *jk),
                 "associativity on (" + alg.labels[i] + ", " + alg.labels[j] + ", " + alg.labels[k] + ")");
      }
  }
  f.raise("A_{" + g.name + "," + n.str() + "}");
  return alg;
}

// ---------------------------------------------------------------- kernels and bimodules

Subspace kernel_intersection(const Module& M1, const std::vector<KernelSource>& sources, const FracExp& n, const FracExp& m, const FracExp& window) {
  const std::vector<int> domain = M1.basis().up_to(window);
  if (sources.empty()) {
    Subspace S(domain);
    for (int v : domain) S.insert(Vec::unit(v));
    return S;
  }
  std::vector<Subspace> omegas;
  std::int64_t stride = 1;
  for (const auto& s : sources) {
    if (&s.I->M1() != &M1) throw ContextMismatch("intertwiner " + s.I->name() + " is not of type over " + M1.name());
    omegas.push_back(omega_space(s.I->M2(), m, s.omega_voa_window, s.omega_module_window));
    stride = std::max<std::int64_t>(stride, s.I->M3().basis().size());
  }
  auto f = [&](int v) {
    Vec out;
    std::int64_t slot = 0;
    for (std::size_t k = 0; k < sources.size(); ++k) {
      ComponentMap cm = o_component(*sources[k].I, Vec::unit(v), n, m, omegas[k]);
      for (const Vec& img : cm.images) {
        for (const auto& [i, c] : img) out.add(static_cast<int>(slot * stride + i), c);
        ++slot;
      }
    }
    return out;
  };
  Subspace K = kernel(domain, f);
  Subspace out(domain);
  for (const Vec& r : K.rows()) out.insert(r);
  return out;
}

BimoduleSC bimodule_present(const Quadruple& Q, const FracExp& n, const FracExp& m, const FracExp& window, const SpanOptions& o,
                            const std::vector<KernelSource>& sources) {
  const Module& M1 = *Q.M1;
  const Voa& V = Q.voa();
  BimoduleSC B;
  B.P = Presentation(span_O_bimod(Q, n, m, o), degree_of(M1), window);
  B.labels = rep_labels(M1, B.P);
  B.upper_dim = B.dim();
  B.left_alg = zhu_algebra(V, Q.g3, n, window, o);
  B.right_alg = zhu_algebra(V, Q.g2, m, window, o);
  const AlgebraSC& L = B.left_alg;
  const AlgebraSC& R = B.right_alg;
  const int d = B.dim();
  B.left = table(
      L.dim(), d, [&](int i, int x) { return try_class(B.P, [&] { return barstar(L.P.rep(i), B.P.rep(x), Q, {n, m, n}); }); }, o.parallel);
  B.right = table(
      d, R.dim(), [&](int x, int j) { return try_class(B.P, [&] { return understar(B.P.rep(x), R.P.rep(j), Q, {n, m, m}); }); }, o.parallel);

  Failures f;
  for (int x = 0; x < d; ++x) {
    const Vec ex = Vec::unit(x);
    f.expect(contract(B.left, L.unit, ex), ex, "left unit on " + B.labels[x]);
    f.expect(contract(B.right, ex, R.unit), ex, "right unit on " + B.labels[x]);
    for (int i = 0; i < L.dim(); ++i)
      for (int j = 0; j < L.dim(); ++j) {
        const auto& ij = L.mult[i][j];
        const auto& jx = B.left[j][x];
        if (!ij || !jx) continue;
        f.expect(contract(B.left, *ij, ex), contract(B.left, Vec::unit(i), *jx),
                 "(ab)x = a(bx) on (" + L.labels[i] + ", " + L.labels[j] + ", " + B.labels[x] + ")");
      }
    for (int i = 0; i < R.dim(); ++i)
      for (int j = 0; j < R.dim(); ++j) {
        const auto& ij = R.mult[i][j];
        const auto& xi = B.right[x][i];
        if (!ij || !xi) continue;
        f.expect(contract(B.right, ex, *ij), contract(B.right, *xi, Vec::unit(j)),
                 "x(ab) = (xa)b on (" + B.labels[x] + ", " + R.labels[i] + ", " + R.labels[j] + ")");
      }
    for (int i = 0; i < L.dim(); ++i)
      for (int j = 0; j < R.dim(); ++j) {
        const auto& ix = B.left[i][x];
        const auto& xj = B.right[x][j];
        if (!ix || !xj) continue;
        f.expect(contract(B.right, *ix, Vec::unit(j)), contract(B.left, Vec::unit(i), *xj),
                 "(ax)b = a(xb) on (" + L.labels[i] + ", " + B.labels[x] + ", " + R.labels[j] + ")");
      }
  }
  f.raise("bimodule " + M1.name() + " at (" + n.str() + ", " + m.str() + ")");

  if (!sources.empty()) {
    Subspace K = kernel_intersection(M1, sources, n, m, window);
    B.lower_dim = static_cast<int>(B.P.ambient_in_window().size()) - K.rank();
    for (const auto& [p, row] : B.P.span().pivot_rows())
      if (M1.deg(p) <= window && !K.contains(row)) B.sandwich_ok = false;
  }

  SpanOptions next = o;
  next.gen_window = o.gen_window.plus_int(1);
  if (next.gen_window <= M1.basis().max_degree()) {
    Presentation P2(span_O_bimod(Q, n, m, next), degree_of(M1), window);
    B.stable = P2.dim() == B.dim();
  }
  return B;
}

// ---------------------------------------------------------------- phi

PhiReport phi_bimodule_check(const Quadruple& Q, const FracExp& n, const FracExp& m, const FracExp& voa_window, const FracExp& window,
                             const FracExp& max_param, const SpanOptions& o) {
  Q.validate();
  const Module& M1 = *Q.M1;
  const Voa& V = Q.voa();
  const Module& A = V.adjoint();
  const int T = Q.T();
  Quadruple Qp{Q.M1, Q.g1, Q.g3.inverse(), Q.g2.inverse()};
  Qp.validate();

  struct Job {
    int a, v;
    FracExp p;
  };
  std::vector<Job> jobs;
  for (int a : V.basis().up_to(voa_window))
    for (int v : M1.basis().up_to(window))
      for (const FracExp& p : grid_up_to(max_param, T)) jobs.push_back({a, v, p});

  std::vector<CheckReport> left(jobs.size()), right(jobs.size());
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (o.parallel)
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    try {
      const Job& j = jobs[k];
      const Vec a = Vec::unit(j.a), v = Vec::unit(j.v);
      const Vec phia = phi_map(A, a, 1);
      const Vec phiv = phi_map(M1, v, 1);
      const std::string tag = " a=" + V.basis()[j.a].label + " v=" + M1.basis()[j.v].label + " p=" + j.p.str();

      Vec l1 = phi_map(M1, barstar(a, v, Qp, {m, n, j.p}), 1);
      Vec r1 = understar(phiv, phia, Q, {n, m, j.p});
      ++left[k].cases;
      if (l1 != r1) left[k].fail("phi+(a*v) != phi+(v)*phi(a)" + tag);

      const Vec g1a = a.scaled(Scalar::root_of_unity(Q.g1(j.a), T));
      Vec l2 = phi_map(M1, understar(v, g1a, Qp, {m, n, j.p}), 1);
      Vec r2 = barstar(phia, phiv, Q, {n, m, j.p});
      ++right[k].cases;
      if (l2 != r2) right[k].fail("phi+(v*g1a) != phi(a)*phi+(v)" + tag);
    } catch (...) {
#pragma omp critical(twzhu_phi_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);

  PhiReport rep;
  for (auto& r : left) rep.left_identity.merge(std::move(r));
  for (auto& r : right) rep.right_identity.merge(std::move(r));

  const Subspace S = span_O_bimod(Q, n, m, o);
  const Subspace Sp = span_O_bimod(Qp, m, n, o);
  auto transported = [&](const Subspace& from, const Subspace& to) {
    for (const Vec& row : from.rows())
      if (!to.contains(phi_map(M1, row, 1))) return false;
    return true;
  };
  rep.span_forward = transported(Sp, S);
  rep.span_backward = transported(S, Sp);
  return rep;
}

}  // namespace twzhu
