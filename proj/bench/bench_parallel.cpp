// Serial reference against the OpenMP kernels: lemma box, span generation, checker grids.
// Every pair is rebuilt from scratch so that mode caches do not favour the second run.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#include "twzhu/indexcalc.hpp"
#include "twzhu/quotient.hpp"

using namespace twzhu;

namespace {

template <class F>
double time_best(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool agree) {
  std::printf("%-34s %10.3f %10.3f %8.2fx  %s\n", name, serial, parallel, serial / parallel, agree ? "same result" : "RESULTS DIFFER");
}

FracExp whole(int k, int T) { return FracExp::integer(k, T); }

void lemma_box(int range) {
  LemmaBox box{{1, 2, 3, 4, 6}, range};
  LemmaReport s, p;
  double ts = time_best(3, [&] { s = verify_index_lemmas_serial(box); });
  double tp = time_best(3, [&] { p = verify_index_lemmas(box); });
  std::string name = "lemma box [-" + std::to_string(range) + "," + std::to_string(range) + "]";
  row(name.c_str(), ts, tp, s.total_cases() == p.total_cases() && s.ok() == p.ok());
}

void span_generation(int G) {
  auto run = [&](bool parallel, Subspace& out) {
    auto V = make_heisenberg(2, G + 2);
    Quadruple Q = Quadruple::make(V->adjoint(), V->automorphism("theta"));
    SpanOptions o{whole(G, 2), 2, FracExp(-1, 2), parallel};
    out = span_O_bimod(Q, FracExp(0, 2), FracExp(0, 2), o);
  };
  Subspace s, p;
  double ts = time_best(1, [&] { run(false, s); });
  double tp = time_best(1, [&] { run(true, p); });
  std::string name = "bimodule span, gen window " + std::to_string(G);
  row(name.c_str(), ts, tp, s.contains_subspace(p) && p.contains_subspace(s));
}

void checker_grid(int W) {
  auto run = [&](bool parallel, AxiomReport& out) {
    auto V = make_heisenberg(2, W);
    auto M = make_fock_module(V, FockKind::theta_twisted, Rational(0), whole(W, 2));
    ModuleMapIntertwiner I(*M);
    ExponentRule beta = [&](int a, int v, int) { return FracExp::integer(V->wt(a), 2) + lambda(V->basis()[v].deg, M->twist()(a)); };
    out = check_associativity(I, beta, CheckGrid{whole(2, 2), whole(2, 2), whole(W - 2, 2), parallel});
  };
  AxiomReport s, p;
  double ts = time_best(1, [&] { run(false, s); });
  double tp = time_best(1, [&] { run(true, p); });
  std::string name = "associativity grid, window " + std::to_string(W);
  row(name.c_str(), ts, tp, s.cases == p.cases && s.failure_count == p.failure_count);
}

void transport_grid() {
  auto run = [&](bool parallel, CheckReport& out) {
    auto V = make_heisenberg(2, 8);
    auto M = make_fock_module(V, FockKind::theta_twisted, Rational(0), whole(4, 2));
    ModuleMapIntertwiner I(*M);
    Quadruple Q = Quadruple::make(V->adjoint(), V->automorphism("theta"));
    out = check_transport_grid(Q, I, TransportGrid{whole(3, 2), whole(3, 2), whole(1, 2), whole(6, 2), whole(3, 2), parallel});
  };
  CheckReport s, p;
  double ts = time_best(1, [&] { run(false, s); });
  double tp = time_best(1, [&] { run(true, p); });
  row("transport grid, weight 3", ts, tp, s.cases == p.cases && s.failure_count == p.failure_count);
}

}  // namespace

int main() {
  std::printf("OpenMP threads: %d (procs %d)\n", omp_get_max_threads(), omp_get_num_procs());
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");
  lemma_box(6);
  lemma_box(12);
  span_generation(6);
  span_generation(8);
  checker_grid(6);
  transport_grid();
}
