#include "twzhu/zhuprod.hpp"

#include <exception>

namespace twzhu {

namespace {

constexpr std::size_t kKeptFailures = 10;

Rational binom(const FracExp& alpha, std::int64_t j) { return gen_binomial(alpha.to_rational(), static_cast<unsigned>(j)); }

Scalar sign(std::int64_t i) { return Scalar(i % 2 == 0 ? 1 : -1); }

std::vector<FracExp> params_up_to(const FracExp& top) {
  std::vector<FracExp> out;
  for (std::int64_t k = 0; k <= top.num(); ++k) out.emplace_back(k, top.T());
  return out;
}

template <class F>
Vec bilinear(const Vec& x, const Vec& y, F f) {
  Vec out;
  for (const auto& [i, cx] : x)
    for (const auto& [j, cy] : y) out.axpy(cx * cy, f(i, j));
  return out;
}

}  // namespace

Quadruple Quadruple::make(const Module& M1, const Automorphism& g2) {
  Quadruple Q;
  Q.M1 = &M1;
  Q.g1 = M1.twist();
  Q.g2 = g2;
  Q.g3 = Q.g1.compose(g2);
  return Q;
}

void Quadruple::validate() const {
  if (!M1) throw ContextMismatch("quadruple without a module");
  if (!g1.same_action(M1->twist())) throw ContextMismatch("g1 is not the twist of " + M1->name());
  if (!g3.same_action(g1.compose(g2))) throw ContextMismatch("g3 differs from g1 g2 on the eigendata");
}

Vec residue_term(const Module& M, int a, int v, const Rational& alpha, const FracExp& K) {
  Vec out;
  const FracExp mode = -K;
  if (!M.in_mode_class(a, mode)) return out;
  const int T = M.T();
  // Y(vac, z) = id: only the mode -1 survives, reached at j = K - 1.
  if (a == M.voa().vacuum()) {
    const FracExp j = K - FracExp::integer(1, T);
    if (j.is_integer() && j.num() >= 0) out.axpy(Scalar(gen_binomial(alpha, static_cast<unsigned>(j.floor()))), Vec::unit(v));
    return out;
  }
  const FracExp zero(0, T);
  for (std::int64_t j = 0;; ++j) {
    const FracExp n = mode.plus_int(j);
    if (M.out_degree(a, n, v) < zero) break;
    Rational c = gen_binomial(alpha, static_cast<unsigned>(j));
    if (c != 0) out.axpy(Scalar(c), M.act(a, n, v));
  }
  return out;
}

Vec star_g_n(const Voa& V, int a, int b, const Automorphism& g, const FracExp& n) {
  if (g(a) != 0) return {};
  const int T = V.T();
  const std::int64_t N = n.floor();
  const Rational alpha(N + V.wt(a));
  Vec out;
  for (std::int64_t j = 0; j <= N; ++j)
    out.axpy(sign(j) * Scalar(gen_binomial(Rational(N + j), static_cast<unsigned>(j))), residue_term(V.adjoint(), a, b, alpha, FracExp::integer(N + j + 1, T)));
  return out;
}

Vec circ_g_n(const Voa& V, int a, int b, const Automorphism& g, const FracExp& n) {
  const int T = V.T();
  const int r = g(a);
  const FracExp alpha = lambda(n, r) + FracExp::integer(V.wt(a), T);
  const std::int64_t K = 2 * n.floor() + delta_ge(n.tilde(), r) + delta_ge(n.tilde(), T - r) + 1;
  return residue_term(V.adjoint(), a, b, alpha.to_rational(), FracExp::integer(K, T));
}

Vec star_g_n(const Voa& V, const Vec& a, const Vec& b, const Automorphism& g, const FracExp& n) {
  return bilinear(a, b, [&](int i, int j) { return star_g_n(V, i, j, g, n); });
}

Vec circ_g_n(const Voa& V, const Vec& a, const Vec& b, const Automorphism& g, const FracExp& n) {
  return bilinear(a, b, [&](int i, int j) { return circ_g_n(V, i, j, g, n); });
}

Vec barstar(int a, int v, const Quadruple& Q, const ProductParams& P) {
  const int T = Q.T();
  const int j1 = Q.g1(a), j2 = Q.g2(a);
  if (mod_T(P.p.tilde() - P.n.tilde() - j1 - j2, T) != 0) return {};
  const Voa& V = Q.voa();
  const FracExp L = lambda(P.m, j2);
  const Rational alpha = (L + FracExp::integer(V.wt(a), T)).to_rational();
  Vec out;
  for (std::int64_t i = 0; i <= P.p.floor(); ++i) {
    const FracExp top = (L + P.n - P.p).plus_int(i);
    out.axpy(sign(i) * Scalar(binom(top, i)), residue_term(*Q.M1, a, v, alpha, top.plus_int(1)));
  }
  return out;
}

Vec understar(int v, int a, const Quadruple& Q, const ProductParams& P) {
  const int T = Q.T();
  const int j1 = Q.g1(a), j2 = Q.g2(a);
  if (mod_T(P.m.tilde() - P.p.tilde() - j2, T) != 0) return {};
  const Voa& V = Q.voa();
  const FracExp L = lambda(P.m, j2);
  const FracExp Lam = lambda(P.n, Q.j3vee(a));
  // g1^{-1} a = e^{-2 pi i j1 / T} a, and the sign (-1)^{p - m - Lam} on the fixed branch
  const Scalar pre = power_branch(P.p - P.m - Lam) * CycloScalar::root_of_unity(-2 * j1, 2 * T);
  Vec out;
  for (std::int64_t i = 0; i <= P.p.floor(); ++i) {
    const FracExp top = (Lam + P.m - P.p).plus_int(i);
    const FracExp alpha = (L + FracExp::integer(V.wt(a), T)).plus_int(i - P.p.floor() - 1);
    out.axpy(pre * Scalar(binom(top, i)), residue_term(*Q.M1, a, v, alpha.to_rational(), top.plus_int(1)));
  }
  return out;
}

Vec barstar(const Vec& a, const Vec& v, const Quadruple& Q, const ProductParams& P) {
  return bilinear(a, v, [&](int i, int j) { return barstar(i, j, Q, P); });
}

Vec understar(const Vec& v, const Vec& a, const Quadruple& Q, const ProductParams& P) {
  return bilinear(v, a, [&](int i, int j) { return understar(i, j, Q, P); });
}

Vec dj_star(const Voa& V, int a, int b, const Automorphism& g, const ProductParams& P) {
  const int T = V.T();
  const int j2 = g(a);
  if (mod_T(P.p.tilde() - P.n.tilde() - j2, T) != 0) return {};
  const std::int64_t dm = delta_ge(P.m.tilde(), j2), dn = delta_ge(P.n.tilde(), T - j2);
  const std::int64_t base = P.m.floor() + P.n.floor() - P.p.floor() + dm + dn;
  const Rational alpha = Rational(V.wt(a) - 1 + P.m.floor() + dm) + make_rational(j2, T);
  Vec out;
  for (std::int64_t i = 0; i <= P.p.floor(); ++i)
    out.axpy(sign(i) * Scalar(gen_binomial(Rational(base - 1 + i), static_cast<unsigned>(i))),
             residue_term(V.adjoint(), a, b, alpha, FracExp::integer(base + i, T)));
  return out;
}

Vec dj_star(const Voa& V, const Vec& a, const Vec& b, const Automorphism& g, const ProductParams& P) {
  return bilinear(a, b, [&](int i, int j) { return dj_star(V, i, j, g, P); });
}

Vec circ_bimod(int a, int v, const Quadruple& Q, const FracExp& n, const FracExp& m, int k, int s) {
  const int T = Q.T();
  const FracExp L = lambda(m, Q.g2(a));
  const FracExp alpha = (L + FracExp::integer(Q.voa().wt(a), T)).plus_int(s);
  const FracExp K = (L + lambda(n, Q.j3vee(a))).plus_int(2 + k);
  return residue_term(*Q.M1, a, v, alpha.to_rational(), K);
}

Vec l_element(const Module& M, const Vec& v, const FracExp& n, const FracExp& m, const Rational& h2, const Rational& h3) {
  Vec out = virasoro(M, -1, v);
  out += virasoro(M, 0, v);
  out.axpy(Scalar((m - n).to_rational() + h2 - h3), v);
  return out;
}

MixedElements mixed_associativity(int a, int b, int v, const Quadruple& Q, const FracExp& n, const FracExp& m, const FracExp& p1, const FracExp& p2) {
  const Module& A = Q.voa().adjoint();
  const Quadruple QV3 = Quadruple::make(A, Q.g3), QV2 = Quadruple::make(A, Q.g2);
  const Vec va = Vec::unit(a), vb = Vec::unit(b), vv = Vec::unit(v);
  MixedElements e;
  e.left_left = barstar(va, barstar(vb, vv, Q, {p2, m, p1}), Q, {n, m, p2});
  e.left_left -= barstar(barstar(va, vb, QV3, {n, p1, p2}), vv, Q, {n, m, p1});
  e.right_right = understar(understar(vv, vb, Q, {n, p1, p2}), va, Q, {n, m, p1});
  e.right_right -= understar(vv, understar(vb, va, QV2, {p2, m, p1}), Q, {n, m, p2});
  e.left_right = understar(barstar(va, vv, Q, {n, p1, p2}), vb, Q, {n, m, p1});
  e.left_right -= barstar(va, understar(vv, vb, Q, {p2, m, p1}), Q, {n, m, p2});
  return e;
}

void CheckReport::fail(std::string s) {
  ++failure_count;
  if (failures.size() < kKeptFailures) failures.push_back(std::move(s));
}

void CheckReport::merge(CheckReport&& o) {
  cases += o.cases;
  failure_count += o.failure_count;
  for (auto& f : o.failures)
    if (failures.size() < kKeptFailures) failures.push_back(std::move(f));
}

namespace {

/// o_{n,p}(a) on a module: a_(wt a - 1 - (n - p)), extended linearly in a.
Vec module_component(const Module& M, const Vec& a, const FracExp& k, const Vec& x) {
  Vec out;
  for (const auto& [ai, c] : a) out.axpy(c, M.act(ai, FracExp::integer(M.voa().wt(ai) - 1, M.T()) - k, x));
  return out;
}

std::string params_str(const ProductParams& P) { return "n=" + P.n.str() + " m=" + P.m.str() + " p=" + P.p.str(); }

}  // namespace

CheckReport check_transport_left(const Vec& a, const Vec& v, const Quadruple& Q, const ProductParams& P, const Intertwiner& I, const Subspace& omega_m) {
  CheckReport rep;
  const Vec prod = barstar(a, v, Q, P);
  for (const Vec& v2 : omega_m.rows()) {
    ++rep.cases;
    Vec lhs = I.component(prod, P.n - P.m, v2);
    Vec rhs = module_component(I.M3(), a, P.n - P.p, I.component(v, P.p - P.m, v2));
    if (lhs != rhs)
      rep.fail("left transport " + params_str(P) + " a=" + vec_to_string(Q.voa().basis(), a) + " v=" + vec_to_string(Q.M1->basis(), v) +
               " v2=" + vec_to_string(I.M2().basis(), v2) + ": " + vec_to_string(I.M3().basis(), lhs) + " vs " + vec_to_string(I.M3().basis(), rhs));
  }
  return rep;
}

CheckReport check_transport_right(const Vec& v, const Vec& a, const Quadruple& Q, const ProductParams& P, const Intertwiner& I, const Subspace& omega_m) {
  CheckReport rep;
  const Vec prod = understar(v, a, Q, P);
  for (const Vec& v2 : omega_m.rows()) {
    ++rep.cases;
    Vec lhs = I.component(prod, P.n - P.m, v2);
    Vec rhs = I.component(v, P.n - P.p, module_component(I.M2(), a, P.p - P.m, v2));
    if (lhs != rhs)
      rep.fail("right transport " + params_str(P) + " v=" + vec_to_string(Q.M1->basis(), v) + " a=" + vec_to_string(Q.voa().basis(), a) +
               " v2=" + vec_to_string(I.M2().basis(), v2) + ": " + vec_to_string(I.M3().basis(), lhs) + " vs " + vec_to_string(I.M3().basis(), rhs));
  }
  return rep;
}

CheckReport check_transport_grid(const Quadruple& Q, const Intertwiner& I, const TransportGrid& g) {
  Q.validate();
  const std::vector<FracExp> params = params_up_to(g.max_param);
  std::vector<Subspace> omegas;
  for (const FracExp& m : params) omegas.push_back(omega_space(I.M2(), m, g.omega_voa_window, g.omega_module_window));
  const std::vector<int> as = Q.voa().basis().up_to(g.voa_window);
  const std::vector<int> vs = Q.M1->basis().up_to(g.m1_window);
  const long total = static_cast<long>(as.size() * vs.size());
  std::vector<CheckReport> parts(total);
  std::vector<std::exception_ptr> errors(total);
#pragma omp parallel for schedule(dynamic) if (g.parallel)
  for (long k = 0; k < total; ++k) {
    try {
      const Vec a = Vec::unit(as[k / vs.size()]), v = Vec::unit(vs[k % vs.size()]);
      for (std::size_t mi = 0; mi < params.size(); ++mi)
        for (const FracExp& n : params)
          for (const FracExp& p : params) {
            const ProductParams P{n, params[mi], p};
            parts[k].merge(check_transport_left(a, v, Q, P, I, omegas[mi]));
            parts[k].merge(check_transport_right(v, a, Q, P, I, omegas[mi]));
          }
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  CheckReport rep;
  for (auto& p : parts) rep.merge(std::move(p));
  return rep;
}

CheckReport check_vacuum_action(const Quadruple& Q, const FracExp& max_param, const FracExp& window) {
  CheckReport rep;
  const int vac = Q.voa().vacuum();
  const std::vector<FracExp> params = params_up_to(max_param);
  for (int v : Q.M1->basis().up_to(window))
    for (const FracExp& n : params)
      for (const FracExp& m : params)
        for (const FracExp& p : params) {
          const ProductParams P{n, m, p};
          rep.cases += 2;
          if (barstar(vac, v, Q, P) != (p == n ? Vec::unit(v) : Vec{}))
            rep.fail("vac bar-star " + Q.M1->basis()[v].label + " at " + params_str(P));
          if (understar(v, vac, Q, P) != (p == m ? Vec::unit(v) : Vec{}))
            rep.fail(Q.M1->basis()[v].label + " underline-star vac at " + params_str(P));
        }
  return rep;
}

}  // namespace twzhu
