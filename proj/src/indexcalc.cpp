#include "twzhu/indexcalc.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <tuple>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace twzhu {

TwistContext TwistContext::make(int T, int j1, int j2) {
  if (T <= 0 || j1 < 0 || j1 >= T || j2 < 0 || j2 >= T) throw ContextMismatch("eigen residues must lie in [0, T)");
  return TwistContext{T, j1, j2};
}

Split split(const FracExp& x) { return Split{x.floor(), x.tilde()}; }

FracExp lambda(const FracExp& x, int r) {
  const int T = x.T();
  std::int64_t v = (-1 + x.floor() + delta_ge(x.tilde(), r)) * T + r;
  return FracExp(v, T);
}

FracExp lambda_t(int t, const FracExp& x, int r) {
  const int T = x.T();
  const int xt = x.tilde();
  std::int64_t v = (-1 + x.floor() + delta_ge(t + xt, r) + delta_ge(t + xt - T, r)) * T + r;
  return FracExp(v, T);
}

std::uint64_t LemmaReport::total_cases() const {
  std::uint64_t n = 0;
  for (const auto& l : lemmas) n += l.cases;
  return n;
}

bool LemmaReport::ok() const {
  for (const auto& l : lemmas)
    if (l.failures) return false;
  return true;
}

namespace {

constexpr std::size_t kKeptCounterexamples = 10;

struct Failure {
  std::vector<std::int64_t> key;
  std::string text;
  bool operator<(const Failure& o) const { return key < o.key; }
};

struct Acc {
  std::uint64_t cases = 0;
  std::uint64_t failures = 0;
  std::vector<Failure> kept;

  void fail(std::vector<std::int64_t> key, std::string text) {
    ++failures;
    kept.push_back({std::move(key), std::move(text)});
    if (kept.size() > 4 * kKeptCounterexamples) {
      std::sort(kept.begin(), kept.end());
      kept.resize(kKeptCounterexamples);
    }
  }
  void merge(Acc&& o) {
    cases += o.cases;
    failures += o.failures;
    for (auto& f : o.kept) kept.push_back(std::move(f));
  }
};

std::string fmt(std::initializer_list<std::pair<const char*, std::string>> kv) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : kv) {
    if (!first) os << ", ";
    first = false;
    os << k << "=" << v;
  }
  return os.str();
}

// Numerators of (1/T)Z elements whose integer part lies in [-R, R].
std::int64_t lo_num(int T, int R) { return -static_cast<std::int64_t>(R) * T; }
std::int64_t hi_num(int T, int R) { return static_cast<std::int64_t>(R) * T + T - 1; }

// Lemma 1: two delta identities over integers, one floor identity over (1/T)Z.
void slice_delta(int T, int R, std::int64_t i, Acc& acc) {
  const std::int64_t L = -static_cast<std::int64_t>(R + 1) * T, H = static_cast<std::int64_t>(R + 1) * T;
  for (std::int64_t r = L; r < H; ++r)
    for (std::int64_t x = L; x < H; ++x) {
      acc.cases += 2;
      if (delta_ge(i + x, r + x) != delta_ge(i, r))
        acc.fail({T, 0, i, r, x}, fmt({{"T", std::to_string(T)}, {"i", std::to_string(i)}, {"r", std::to_string(r)}, {"x", std::to_string(x)}, {"part", "shift"}}));
      if (delta_ge(i, r - x) != delta_ge(x, r - i))
        acc.fail({T, 1, i, r, x}, fmt({{"T", std::to_string(T)}, {"i", std::to_string(i)}, {"r", std::to_string(r)}, {"x", std::to_string(x)}, {"part", "swap"}}));
    }
}

void slice_floor(int T, int R, std::int64_t rn, Acc& acc) {
  FracExp r(rn, T);
  for (std::int64_t xn = lo_num(T, R); xn <= hi_num(T, R); ++xn) {
    FracExp x(xn, T);
    ++acc.cases;
    std::int64_t lhs = (r + x).floor();
    std::int64_t rhs = r.floor() + x.floor() + delta_ge(r.tilde(), T - x.tilde());
    if (lhs != rhs) acc.fail({T, rn, xn}, fmt({{"T", std::to_string(T)}, {"r", r.str()}, {"x", x.str()}}));
  }
}

// Lemma 2: lambda_t(m, r) + n - t/T = lambda(n, j3v) + m under m~ - p~ - j2 = 0 mod T.
void slice_right_action(int T, int R, std::int64_t mn, Acc& acc) {
  FracExp m(mn, T);
  for (std::int64_t nn = lo_num(T, R); nn <= hi_num(T, R); ++nn) {
    FracExp n(nn, T);
    for (std::int64_t pn = lo_num(T, R); pn <= hi_num(T, R); ++pn) {
      FracExp p(pn, T);
      for (int j1 = 0; j1 < T; ++j1)
        for (int j2 = 0; j2 < T; ++j2) {
          if (mod_T(m.tilde() - p.tilde() - j2, T) != 0) continue;
          const int j3v = mod_T(-j1 - j2, T);
          for (int t = 0; t < T; ++t) {
            const int r = mod_T(t + p.tilde() - n.tilde() - j1, T);
            ++acc.cases;
            FracExp lhs = lambda_t(t, m, r) + n - FracExp(t, T);
            FracExp rhs = lambda(n, j3v) + m;
            if (lhs != rhs)
              acc.fail({T, mn, nn, pn, j1, j2, t},
                       fmt({{"T", std::to_string(T)}, {"m", m.str()}, {"n", n.str()}, {"p", p.str()}, {"j1", std::to_string(j1)}, {"j2", std::to_string(j2)}, {"t", std::to_string(t)}}));
          }
        }
    }
  }
}

// Lemma 3: lambda_t(m, r) + n - m - t/T = lambda(n, j3v) under m~ - n~ + t + j3v - r = 0 mod T.
void slice_circ(int T, int R, std::int64_t mn, Acc& acc) {
  FracExp m(mn, T);
  for (std::int64_t nn = lo_num(T, R); nn <= hi_num(T, R); ++nn) {
    FracExp n(nn, T);
    for (int j3v = 0; j3v < T; ++j3v)
      for (int r = 0; r < T; ++r)
        for (int t = 0; t < T; ++t) {
          if (mod_T(m.tilde() - n.tilde() + t + j3v - r, T) != 0) continue;
          ++acc.cases;
          FracExp lhs = lambda_t(t, m, r) + n - m - FracExp(t, T);
          FracExp rhs = lambda(n, j3v);
          if (lhs != rhs)
            acc.fail({T, mn, nn, j3v, r, t},
                     fmt({{"T", std::to_string(T)}, {"m", m.str()}, {"n", n.str()}, {"j3v", std::to_string(j3v)}, {"r", std::to_string(r)}, {"t", std::to_string(t)}}));
        }
  }
}

// Lemma 4: lambda(z + x, j3v) - x + q1 = floor(z + q1), x in Z - j2/T, q1 in Z + j1/T.
void slice_commF(int T, int R, std::int64_t zn, Acc& acc) {
  FracExp z(zn, T);
  for (int j1 = 0; j1 < T; ++j1)
    for (int j2 = 0; j2 < T; ++j2) {
      const int j3v = mod_T(-j1 - j2, T);
      for (int X = -R; X <= R; ++X) {
        FracExp x(static_cast<std::int64_t>(X) * T - j2, T);
        for (int Q = -R; Q <= R; ++Q) {
          FracExp q1(static_cast<std::int64_t>(Q) * T + j1, T);
          ++acc.cases;
          FracExp lhs = lambda(z + x, j3v) - x + q1;
          FracExp rhs = FracExp::integer((z + q1).floor(), T);
          if (lhs != rhs)
            acc.fail({T, zn, j1, j2, X, Q},
                     fmt({{"T", std::to_string(T)}, {"z", z.str()}, {"x", x.str()}, {"q1", q1.str()}, {"j1", std::to_string(j1)}, {"j2", std::to_string(j2)}}));
        }
      }
    }
}

using Slice = void (*)(int, int, std::int64_t, Acc&);

struct LemmaDef {
  const char* name;
  Slice slice;
  bool integer_outer;  // outer variable ranges over integers scaled by T (lemma 1 parts a/b)
};

const LemmaDef kLemmas[] = {
    {"delta_shift_swap", slice_delta, true},
    {"floor_add", slice_floor, false},
    {"right_action", slice_right_action, false},
    {"circ_product", slice_circ, false},
    {"commutativity_F", slice_commF, false},
};

LemmaReport run(const LemmaBox& box, bool parallel) {
  if (box.Ts.empty() || box.range < 0) throw InvalidBox("lemma box needs at least one T and a nonnegative range");
  for (int T : box.Ts)
    if (T <= 0) throw InvalidBox("T must be positive");
  LemmaReport rep;
  for (const auto& def : kLemmas) {
    Acc total;
    for (int T : box.Ts) {
      std::int64_t lo, hi;
      if (def.integer_outer) {
        lo = -static_cast<std::int64_t>(box.range + 1) * T;
        hi = static_cast<std::int64_t>(box.range + 1) * T - 1;
      } else {
        lo = lo_num(T, box.range);
        hi = hi_num(T, box.range);
      }
      const std::int64_t count = hi - lo + 1;
      std::vector<Acc> parts(count);
#pragma omp parallel for schedule(dynamic) if (parallel)
      for (std::int64_t k = 0; k < count; ++k) def.slice(T, box.range, lo + k, parts[k]);
      for (auto& p : parts) total.merge(std::move(p));
    }
    std::sort(total.kept.begin(), total.kept.end());
    LemmaResult res;
    res.name = def.name;
    res.cases = total.cases;
    res.failures = total.failures;
    for (std::size_t i = 0; i < total.kept.size() && i < kKeptCounterexamples; ++i) res.counterexamples.push_back(total.kept[i].text);
    if (res.cases == 0) throw InvalidBox(std::string("hypothesis filter leaves no cases for ") + def.name);
    rep.lemmas.push_back(std::move(res));
  }
  return rep;
}

}  // namespace

LemmaReport verify_index_lemmas(const LemmaBox& box) { return run(box, true); }
LemmaReport verify_index_lemmas_serial(const LemmaBox& box) { return run(box, false); }

std::pair<std::vector<Rational>, std::vector<Rational>> binomial_identity_A(unsigned l, const Rational& e, const Rational& f) {
  std::vector<Rational> lhs(l + 1, Rational(0)), rhs(l + 1, Rational(0));
  for (unsigned i = 0; i <= l; ++i)
    for (unsigned j = 0; j + i <= l; ++j) {
      Rational t = gen_binomial(e + i, i) * gen_binomial(f + i + j, j);
      lhs[i + j] += (j % 2) ? -t : t;
    }
  for (unsigned p = 0; p <= l; ++p) rhs[p] = gen_binomial(e - f, p);
  return {lhs, rhs};
}

std::pair<std::vector<Rational>, std::vector<Rational>> binomial_identity_B(unsigned l, const Rational& e, const Rational& f) {
  std::vector<Rational> lhs(l + 1, Rational(0)), rhs(l + 1, Rational(0));
  for (unsigned i = 0; i <= l; ++i)
    for (unsigned j = 0; j + i <= l; ++j) lhs[i + j] += gen_binomial(e, i) * gen_binomial(f + i + j, j);
  for (unsigned p = 0; p <= l; ++p) rhs[p] = gen_binomial(e + f + p, p);
  return {lhs, rhs};
}

BinomialReport verify_binomial_identities(unsigned l_max, const std::vector<std::pair<Rational, Rational>>& samples) {
  BinomialReport rep;
  for (const auto& [e, f] : samples)
    for (unsigned l = 0; l <= l_max; ++l) {
      auto a = binomial_identity_A(l, e, f);
      auto b = binomial_identity_B(l, e, f);
      rep.checks += 2;
      if (a.first != a.second) rep.failures.push_back("A l=" + std::to_string(l) + " e=" + format_rational(e) + " f=" + format_rational(f));
      if (b.first != b.second) rep.failures.push_back("B l=" + std::to_string(l) + " e=" + format_rational(e) + " f=" + format_rational(f));
    }
  return rep;
}

std::vector<std::pair<Rational, Rational>> sample_rational_pairs(unsigned count, int max_den, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> den(1, max_den);
  std::uniform_int_distribution<int> num(-40, 40);
  std::vector<std::pair<Rational, Rational>> out;
  for (unsigned k = 0; k < count; ++k) {
    Rational e(num(rng), den(rng));
    Rational f(num(rng), den(rng));
    e.canonicalize();
    f.canonicalize();
    out.emplace_back(e, f);
  }
  return out;
}

}  // namespace twzhu
