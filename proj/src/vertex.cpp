#include "twzhu/vertex.hpp"

#include <algorithm>
#include <exception>
#include <sstream>

#include "twzhu/indexcalc.hpp"

namespace twzhu {

namespace {

constexpr std::size_t kKeptFailures = 10;

// Exponents of the form k/T in [lo, hi], stepping by 1/T.
std::vector<FracExp> steps(const FracExp& lo, const FracExp& hi) {
  std::vector<FracExp> out;
  for (std::int64_t k = lo.num(); k <= hi.num(); ++k) out.emplace_back(k, lo.T());
  return out;
}

}  // namespace

VecSeries vertex_series(const Module& M, int a, int v) {
  const int T = M.T();
  const FracExp wt = FracExp::integer(M.voa().wt(a), T);
  const FracExp top = M.basis().max_degree();
  FracExp lo = -(M.deg(v) + wt);
  FracExp hi = top - M.deg(v) - wt;
  VecSeries s(T, lo, hi);
  for (const FracExp& e : steps(lo, hi)) {
    FracExp n = -e - FracExp::integer(1, T);
    s.add(e, M.act(a, n, v));
  }
  return s;
}

Vec scale_L0(const Voa& V, const Vec& a, const Scalar& x) {
  Vec out;
  for (const auto& [i, c] : a) {
    Scalar p(1);
    for (std::int64_t k = 0; k < V.wt(i); ++k) p *= x;
    out.add(i, c * p);
  }
  return out;
}

ScalarSeries scale_L0_series(const Voa& V, int a, unsigned jmax) { return binom_expand(Rational(V.wt(a)), jmax, V.T()); }

Vec virasoro(const Module& M, int k, const Vec& v) {
  return M.act(M.voa().omega(), FracExp::integer(k + 1, M.T()), v);
}

Vec exp_L1(const Module& M, const Vec& v, int sign) {
  Vec sum = v, term = v;
  for (int j = 1; !term.empty(); ++j) {
    term = virasoro(M, 1, term).scaled(Scalar(make_rational(sign, j)));
    sum += term;
  }
  return sum;
}

Vec phi_map(const Module& M, const Vec& v, int sign) {
  Vec w;
  for (const auto& [i, c] : v) {
    FracExp d = M.deg(i);
    w.add(i, c * power_branch(sign > 0 ? d : -d));
  }
  return exp_L1(M, w, 1);
}

Subspace omega_space(const Module& M, const FracExp& n, const FracExp& voa_window, const FracExp& module_window) {
  const Voa& V = M.voa();
  const int T = M.T();
  std::vector<int> domain = M.basis().up_to(module_window);
  std::vector<int> avec = V.basis().up_to(voa_window);
  const int dimM = M.basis().size();
  const std::int64_t span = (module_window.num() + voa_window.num()) / T + 4;
  auto f = [&](int v) {
    Vec out;
    for (std::size_t ai = 0; ai < avec.size(); ++ai) {
      int a = avec[ai];
      int r = M.twist()(a);
      FracExp wt = FracExp::integer(V.wt(a), T);
      FracExp bound = lambda(n, r) + wt - FracExp::integer(1, T);
      // smallest k in r/T + Z strictly above bound
      FracExp k(bound.num() + 1, T);
      while (k.tilde() != r) k = FracExp(k.num() + 1, T);
      for (std::int64_t off = 0;; ++off) {
        FracExp kk = k.plus_int(off);
        if (M.out_degree(a, kk, v) < FracExp(0, T)) break;
        Vec w = M.act(a, kk, v);
        for (const auto& [i, c] : w) out.add(static_cast<int>((static_cast<std::int64_t>(ai) * span + off) * dimM + i), c);
      }
    }
    return out;
  };
  return kernel(domain, f);
}

Vec Intertwiner::mode(const Vec& v, const FracExp& n, const Vec& x) const {
  Vec out;
  for (const auto& [vi, cv] : v)
    for (const auto& [xi, cx] : x) out.axpy(cv * cx, mode(vi, n, xi));
  return out;
}

Vec Intertwiner::component(const Vec& v, const FracExp& k, const Vec& x) const {
  Vec out;
  const int T = M1().T();
  for (const auto& [d, part] : homogeneous_parts(M1().basis(), v)) out += mode(part, d - FracExp::integer(1, T) - k, x);
  return out;
}

ComponentMap o_component(const Intertwiner& I, const Vec& v, const FracExp& n, const FracExp& m, const Subspace& omega_m) {
  ComponentMap cm;
  for (const Vec& row : omega_m.rows()) {
    cm.domain.push_back(row);
    cm.images.push_back(I.component(v, n - m, row));
  }
  return cm;
}

void AxiomReport::merge(AxiomReport&& o) {
  cases += o.cases;
  failure_count += o.failure_count;
  for (auto& f : o.failures)
    if (failures.size() < kKeptFailures) failures.push_back(std::move(f));
}

std::pair<Vec, Vec> associativity_sides(const Intertwiner& I, int a, int v, int v2, const FracExp& beta, const FracExp& x, const FracExp& y) {
  const Module& M1 = I.M1();
  const Module& M3 = I.M3();
  const int T = M1.T();
  const FracExp one = FracExp::integer(1, T);
  const FracExp wt = FracExp::integer(M1.voa().wt(a), T);
  Vec lhs, rhs;
  const FracExp mid = I.M2().deg(v2) + M1.deg(v) + y;
  for (std::int64_t i = 0; FracExp::integer(i, T) <= mid; ++i) {
    FracExp fi = FracExp::integer(i, T);
    Vec inner = I.mode(v, fi - one - y, v2);
    if (inner.empty()) continue;
    Rational c = gen_binomial((x + fi).to_rational(), static_cast<unsigned>(i));
    lhs.axpy(Scalar(c), M3.act(a, beta - one - x - fi, inner));
  }
  const FracExp top = wt + M1.deg(v) + x;
  for (std::int64_t j = 0; FracExp::integer(j, T) <= top; ++j) {
    FracExp fj = FracExp::integer(j, T);
    Vec av = M1.act(a, fj - one - x, v);
    if (av.empty()) continue;
    Rational c = gen_binomial(beta.to_rational(), static_cast<unsigned>(j));
    if (c == 0) continue;
    rhs.axpy(Scalar(c), I.mode(av, beta - fj - one - y, Vec::unit(v2)));
  }
  return {lhs, rhs};
}

std::pair<Vec, Vec> commutativity_sides(const Intertwiner& I, int a, int v, int v2, const FracExp& alpha, const FracExp& x, const FracExp& y) {
  const Module& M1 = I.M1();
  const Module& M2 = I.M2();
  const Module& M3 = I.M3();
  const int T = M1.T();
  const FracExp one = FracExp::integer(1, T);
  const FracExp wt = FracExp::integer(M1.voa().wt(a), T);
  Vec lhs, rhs;
  const FracExp mid3 = M2.deg(v2) + M1.deg(v) + y;
  for (std::int64_t i = 0; FracExp::integer(i, T) <= mid3; ++i) {
    FracExp fi = FracExp::integer(i, T);
    Rational c = gen_binomial(alpha.to_rational(), static_cast<unsigned>(i));
    if (c == 0) continue;
    Vec inner = I.mode(v, fi - one - y, v2);
    if (inner.empty()) continue;
    lhs.axpy(Scalar(i % 2 ? -c : c), M3.act(a, alpha - fi - one - x, inner));
  }
  const FracExp mid2 = M2.deg(v2) + wt + x;
  for (std::int64_t j = 0; FracExp::integer(j, T) <= mid2; ++j) {
    FracExp fj = FracExp::integer(j, T);
    Rational c = gen_binomial(alpha.to_rational(), static_cast<unsigned>(j));
    if (c == 0) continue;
    Vec inner = M2.act(a, fj - one - x, v2);
    if (inner.empty()) continue;
    rhs.axpy(Scalar(c) * power_branch(alpha - fj), I.mode(Vec::unit(v), alpha - fj - one - y, inner));
  }
  return {lhs, rhs};
}

namespace {

struct Triple {
  int a, v, v2;
};

std::vector<Triple> triples(const Intertwiner& I, const CheckGrid& g) {
  std::vector<Triple> out;
  for (int a : I.M1().voa().basis().up_to(g.voa_window))
    for (int v : I.M1().basis().up_to(g.m1_window))
      for (int v2 : I.M2().basis().up_to(g.m2_window)) out.push_back({a, v, v2});
  return out;
}

std::string describe(const Intertwiner& I, const char* what, const Triple& t, const FracExp& x, const FracExp& y, const std::pair<Vec, Vec>& s) {
  std::ostringstream os;
  os << what << " a=" << I.M1().voa().basis()[t.a].label << " v=" << I.M1().basis()[t.v].label << " v2=" << I.M2().basis()[t.v2].label
     << " x=" << x.str() << " y=" << y.str() << " lhs=" << vec_to_string(I.M3().basis(), s.first)
     << " rhs=" << vec_to_string(I.M3().basis(), s.second);
  return os.str();
}

template <class Sides>
AxiomReport run_grid(const Intertwiner& I, const ExponentRule& rule, const CheckGrid& g, const char* what, Sides sides, bool assoc) {
  std::vector<Triple> ts = triples(I, g);
  std::vector<AxiomReport> parts(ts.size());
  const bool capped = g.inner.num() >= 0;
  const FracExp W1 = capped ? std::min(g.inner, I.M1().basis().max_degree()) : I.M1().basis().max_degree();
  const FracExp W2 = capped ? std::min(g.inner, I.M2().basis().max_degree()) : I.M2().basis().max_degree();
  const FracExp W3 = I.M3().basis().max_degree();
  const int T = I.M1().T();
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) if (g.parallel)
  for (std::size_t k = 0; k < ts.size(); ++k) {
    try {
      const Triple& t = ts[k];
      const FracExp wt = FracExp::integer(I.M1().voa().wt(t.a), T);
      const FracExp e = rule(t.a, t.v, t.v2);
      const FracExp base = I.M2().deg(t.v2) + I.M1().deg(t.v) + wt - e;  // final degree = base + x + y
      const FracExp ymax = W3 - I.M2().deg(t.v2) - I.M1().deg(t.v);
      const FracExp xmax = assoc ? W1 - wt - I.M1().deg(t.v) : W2 - wt - I.M2().deg(t.v2);
      AxiomReport& rep = parts[k];
      for (const FracExp& y : steps(-base - xmax, ymax))
        for (const FracExp& x : steps(-base - y, xmax)) {
          FracExp fin = base + x + y;
          if (fin > W3) break;
          auto s = sides(I, t.a, t.v, t.v2, e, x, y);
          ++rep.cases;
          if (s.first != s.second) {
            ++rep.failure_count;
            if (rep.failures.size() < kKeptFailures) rep.failures.push_back(describe(I, what, t, x, y, s));
          }
        }
    } catch (...) {
#pragma omp critical(twzhu_grid_err)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  AxiomReport total;
  for (auto& p : parts) total.merge(std::move(p));
  return total;
}

}  // namespace

AxiomReport check_associativity(const Intertwiner& I, const ExponentRule& beta, const CheckGrid& grid) {
  return run_grid(I, beta, grid, "associativity", associativity_sides, true);
}

AxiomReport check_commutativity(const Intertwiner& I, const ExponentRule& alpha, const CheckGrid& grid) {
  return run_grid(I, alpha, grid, "commutativity", commutativity_sides, false);
}

AxiomReport validate_module_axioms(const Module& M, const Window& W, bool parallel) {
  const Voa& V = M.voa();
  const int T = M.T();
  AxiomReport rep;
  auto fail = [&](const std::string& s) {
    ++rep.failure_count;
    if (rep.failures.size() < kKeptFailures) rep.failures.push_back(s);
  };
  const FracExp top = M.basis().max_degree();
  for (int a : V.basis().up_to(W.voa))
    for (int v : M.basis().up_to(W.module)) {
      FracExp wt = FracExp::integer(V.wt(a), T);
      // all modes whose output lands in [0, top]
      for (const FracExp& n : steps(M.deg(v) + wt - FracExp::integer(1, T) - top, M.deg(v) + wt - FracExp::integer(1, T))) {
        Vec out = M.act(a, n, v);
        ++rep.cases;
        if (!M.in_mode_class(a, n)) continue;
        FracExp d = M.out_degree(a, n, v);
        for (const auto& [i, c] : out)
          if (M.deg(i) != d)
            fail("grading: (" + V.basis()[a].label + ")_(" + n.str() + ") " + M.basis()[v].label + " has a component in degree " + M.deg(i).str());
        if (a == V.vacuum()) {
          Vec want = n == FracExp::integer(-1, T) ? Vec::unit(v) : Vec{};
          if (out != want) fail("vacuum: vac_(" + n.str() + ") " + M.basis()[v].label);
        }
      }
    }
  ModuleMapIntertwiner I(M);
  CheckGrid g{W.voa, W.voa, W.module, parallel, W.inner};
  ExponentRule beta = [&](int a, int, int v2) {
    return FracExp::integer(V.wt(a), T) + lambda(M.deg(v2), M.twist()(a));
  };
  rep.merge(check_associativity(I, beta, g));
  return rep;
}

AxiomReport check_conjugation_L1(const Module& M, int a, int v) {
  const Voa& V = M.voa();
  const int T = M.T();
  const FracExp one = FracExp::integer(1, T);
  const FracExp wt = FracExp::integer(V.wt(a), T);
  const FracExp top = M.basis().max_degree();
  AxiomReport rep;
  auto fail = [&](const std::string& s) {
    ++rep.failure_count;
    if (rep.failures.size() < kKeptFailures) rep.failures.push_back(s);
  };
  // L(1)^j a / j!
  std::vector<Vec> l1pow{Vec::unit(a)};
  for (int j = 1;; ++j) {
    Vec nxt = virasoro(V.adjoint(), 1, l1pow.back()).scaled(Scalar(make_rational(1, j)));
    if (nxt.empty()) break;
    l1pow.push_back(nxt);
  }
  Vec emv = exp_L1(M, Vec::unit(v), -1);
  const FracExp nmax = M.deg(v) + wt - one;
  for (const FracExp& n : steps(M.deg(v) + wt - one - top, nmax)) {
    if (!M.in_mode_class(a, n)) continue;
    ++rep.cases;
    Vec lhs = exp_L1(M, M.act(a, n, emv), 1);
    Vec rhs;
    for (std::size_t j = 0; j < l1pow.size(); ++j) {
      for (std::int64_t k = 0;; ++k) {
        FracExp nk = n.plus_int(k);
        if (nk > M.deg(v) + wt - FracExp::integer(static_cast<std::int64_t>(j), T) - one) break;
        Rational ex = (nk + one - wt - wt).to_rational() + static_cast<long>(j);
        Rational c = gen_binomial(ex, static_cast<unsigned>(k));
        if (k % 2) c = -c;
        if (c == 0) continue;
        rhs.axpy(Scalar(c), M.act(l1pow[j], nk, Vec::unit(v)));
      }
    }
    if (lhs != rhs)
      fail("L(1) conjugation: a=" + V.basis()[a].label + " v=" + M.basis()[v].label + " n=" + n.str() + " lhs=" + vec_to_string(M.basis(), lhs) +
           " rhs=" + vec_to_string(M.basis(), rhs));
  }
  // e^{pi i L0} Y(a, z) e^{-pi i L0} against Y((-1)^{L0} a, y) with y^s = e^{pi i s} z^s
  VecSeries Y = vertex_series(M, a, v);
  VecSeries Yneg = substitute_neg(Y);
  const Scalar sa = power_branch(wt);
  for (const auto& [e, val] : Y.terms()) {
    ++rep.cases;
    Vec lhs;
    for (const auto& [i, c] : val) lhs.add(i, c * power_branch(M.deg(i) - M.deg(v)));
    Vec rhs = Yneg.coeff(e).scaled(sa);
    if (lhs != rhs) fail("L(0) conjugation: a=" + V.basis()[a].label + " v=" + M.basis()[v].label + " exponent " + e.str());
  }
  return rep;
}

}  // namespace twzhu
