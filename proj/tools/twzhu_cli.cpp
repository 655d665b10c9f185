// twzhu_cli: batch runs of the lemma suites, module validation, Zhu and bimodule
// presentations, induction, F° checks and fusion bounds, with JSON reports.

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "twzhu/errors.hpp"
#include "twzhu/indexcalc.hpp"
#include "twzhu/modefile.hpp"
#include "twzhu/quotient.hpp"

using namespace twzhu;
using ojson = nlohmann::ordered_json;

namespace {

constexpr const char* kSchema = "twzhu-report/1";
constexpr const char* kOutDirEnv = "TWZHU_OUT_DIR";

enum Exit { kOk = 0, kCheckFailed = 1, kConfig = 2, kTable = 3 };

class ConfigError : public Error {
 public:
  using Error::Error;
};

struct Config {
  std::string command;
  std::string T;
  std::string builtin = "heisenberg";
  std::vector<std::string> modefiles;
  std::string g = "id", g1, g2, g3;
  std::string n = "0", m = "0", p = "0";
  std::string window = "4";
  std::string gen_window, table, module_table;
  std::string voa_window, check_window = "2", inner;
  std::string max_degree;
  std::string M, M1 = "V", M2, M3;
  std::vector<std::string> kernel;
  int box = 6;
  unsigned l_max = 12;
  unsigned samples = 50;
  std::string out;
  std::uint64_t seed = 2024;
};

// ---------------------------------------------------------------- parsing helpers

int parse_int(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(std::string("--") + what + ": not an integer: '" + s + "'");
  }
}

std::vector<int> parse_int_list(const std::string& s, const char* what) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_int(item, what));
  if (out.empty()) throw ConfigError(std::string("--") + what + ": empty list");
  return out;
}

FracExp parse_param(const std::string& s, int T, const char* what, bool allow_zero = true) {
  Rational r;
  try {
    r = parse_rational(s);
  } catch (const SchemaError&) {
    throw ConfigError(std::string("--") + what + ": not a rational: '" + s + "'");
  }
  if (r < 0 || (!allow_zero && r == 0)) throw ConfigError(std::string("--") + what + " must be " + (allow_zero ? "nonnegative" : "positive"));
  try {
    return FracExp::from_rational(r, T);
  } catch (const ContextMismatch&) {
    throw ConfigError(std::string("--") + what + "=" + s + " is not in (1/" + std::to_string(T) + ")N");
  }
}

ojson scalar_json(const Scalar& s) { return s.is_rational() ? ojson(format_rational(s.rational())) : ojson(s.str()); }

ojson frac_json(const FracExp& e) { return format_rational(e.to_rational()); }

ojson vec_json(const Vec& v) {
  ojson out = ojson::array();
  for (const auto& [i, c] : v) out.push_back({i, scalar_json(c)});
  return out;
}

ojson table_json(const ProductTable& t) {
  ojson entries = ojson::array();
  int absent = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t[i].size(); ++j) {
      if (!t[i][j]) {
        ++absent;
        continue;
      }
      for (const auto& [k, c] : *t[i][j]) entries.push_back({i, j, k, scalar_json(c)});
    }
  return {{"triples", entries}, {"undefined_entries", absent}};
}

ojson failures_json(const std::vector<std::string>& f) {
  ojson out = ojson::array();
  for (const auto& s : f) out.push_back(s);
  return out;
}

ojson eigen_json(const std::vector<EigenBlock>& blocks) {
  ojson out = ojson::array();
  for (const auto& b : blocks) out.push_back({{"eigenvalue", scalar_json(b.eigenvalue)}, {"multiplicity", b.vectors.size()}});
  return out;
}

// ---------------------------------------------------------------- environment

class Env {
 public:
  explicit Env(const Config& c) : c_(c) {}

  void load(int default_T, const std::function<FracExp(int)>& voa_table_top) {
    if (!c_.modefiles.empty()) {
      std::vector<nlohmann::json> mods;
      for (const auto& path : c_.modefiles) {
        nlohmann::json doc;
        try {
          doc = read_json_file(path);
        } catch (const nlohmann::json::exception& e) {
          throw SchemaError(path + ": " + e.what());
        }
        if (doc.value("kind", std::string()) == "voa") {
          if (V_) throw ConfigError("more than one VOA mode file given");
          V_ = load_voa(doc);
        } else {
          mods.push_back(std::move(doc));
        }
      }
      if (!V_) throw ConfigError("no VOA among the mode files");
      if (!c_.T.empty() && parse_int(c_.T, "T") != V_->T()) throw ConfigError("--T disagrees with the VOA mode file");
      for (const auto& doc : mods) {
        auto M = load_module(doc, V_);
        if (!files_.emplace(M->name(), M).second) throw ConfigError("duplicate module name '" + M->name() + "'");
        order_.push_back(M->name());
      }
      return;
    }
    const int T = c_.T.empty() ? default_T : parse_int(c_.T, "T");
    if (T < 1) throw ConfigError("--T must be positive");
    if (c_.builtin == "heisenberg")
      V_ = make_heisenberg(T, static_cast<int>(voa_table_top(T).floor()));
    else if (c_.builtin == "trivial")
      V_ = make_trivial_voa(T);
    else
      throw ConfigError("unknown builtin '" + c_.builtin + "' (heisenberg, trivial)");
  }

  const Voa& V() const { return *V_; }
  int T() const { return V_->T(); }
  std::string default_module() const {
    if (!order_.empty()) return order_.front();
    return V_->automorphism_names().size() > 1 && c_.builtin == "heisenberg" && T() % 2 == 0 ? "theta" : "V";
  }

  /// "V" is the adjoint module; builtins add "theta" and "fock:<momentum>".
  const Module& module(const std::string& sel, const FracExp& table_top) {
    if (sel == "V" || sel == "adjoint") return V_->adjoint();
    if (auto it = files_.find(sel); it != files_.end()) return *it->second;
    if (auto it = built_.find(sel); it != built_.end()) return *it->second;
    if (!c_.modefiles.empty() || c_.builtin != "heisenberg") throw ConfigError("unknown module '" + sel + "'");
    std::shared_ptr<Module> M;
    if (sel == "theta") {
      if (T() % 2 != 0) throw ConfigError("the theta-twisted module needs an even --T");
      M = make_fock_module(V_, FockKind::theta_twisted, Rational(0), table_top);
    } else if (sel.rfind("fock:", 0) == 0) {
      Rational lam;
      try {
        lam = parse_rational(sel.substr(5));
      } catch (const SchemaError&) {
        throw ConfigError("bad momentum in '" + sel + "'");
      }
      M = make_fock_module(V_, FockKind::untwisted, lam, table_top);
    } else {
      throw ConfigError("unknown module '" + sel + "' (V, theta, fock:<momentum>)");
    }
    return *built_.emplace(sel, M).first->second;
  }

  const Automorphism& automorphism(const std::string& name) const { return V_->automorphism(name); }

  /// (M1, g1, g2, g3) with the optional --g1 and --g3 checked against the twist of M1.
  Quadruple quadruple(const Module& M1, const Automorphism& g2) const {
    Quadruple Q = Quadruple::make(M1, g2);
    if (!c_.g1.empty() && !automorphism(c_.g1).same_action(Q.g1)) throw ConfigError("--g1 is not the twist of " + M1.name());
    if (!c_.g3.empty() && !automorphism(c_.g3).same_action(Q.g3)) throw ConfigError("--g3 is not g1 g2");
    return Q;
  }

 private:
  const Config& c_;
  std::shared_ptr<Voa> V_;
  std::map<std::string, std::shared_ptr<Module>> files_;
  std::vector<std::string> order_;
  std::map<std::string, std::shared_ptr<Module>> built_;
};

struct Windows {
  FracExp W, G, table, module_table;
};

// Defaults: generators two weights above the window, the VOA table `extra` above that.
Windows windows(const Config& c, int T, int extra) {
  Windows w;
  w.W = parse_param(c.window, T, "window", false);
  w.G = c.gen_window.empty() ? w.W.plus_int(2) : parse_param(c.gen_window, T, "gen-window");
  if (w.G < w.W) throw ConfigError("--gen-window must not be below --window");
  w.table = c.table.empty() ? w.G.plus_int(extra) : parse_param(c.table, T, "table", false);
  if (w.table < w.G) throw ConfigError("--table must reach --gen-window");
  w.module_table = c.module_table.empty() ? w.W : parse_param(c.module_table, T, "module-table");
  return w;
}

int T_hint(const Config& c) { return c.T.empty() ? 2 : parse_int(c.T, "T"); }

SpanOptions span_options(const Windows& w) { return SpanOptions{w.G, 2, FracExp(-1, w.G.T()), true}; }

ojson header(const Config& c) {
  ojson r;
  r["schema"] = kSchema;
  r["command"] = c.command;
  return r;
}

ojson setup_json(const Config& c, const Env& env, const Windows& w) {
  ojson s;
  s["voa"] = env.V().name();
  s["T"] = env.T();
  s["source"] = c.modefiles.empty() ? ojson(c.builtin) : ojson(c.modefiles);
  s["window"] = frac_json(w.W);
  s["gen_window"] = frac_json(w.G);
  s["table"] = frac_json(w.table);
  s["module_table"] = frac_json(w.module_table);
  s["seed"] = c.seed;
  return s;
}

ojson algebra_json(const AlgebraSC& A) {
  ojson a;
  a["dim"] = A.dim();
  a["labels"] = A.labels;
  a["unit"] = vec_json(A.unit);
  a["omega"] = vec_json(A.omega);
  a["products"] = table_json(A.mult);
  return a;
}

// [omega] as a scalar multiple of the unit when it is one.
std::optional<Scalar> omega_scalar(const AlgebraSC& A) {
  if (A.unit.size() != 1) return std::nullopt;
  const auto& [i, u] = *A.unit.begin();
  Scalar c = A.omega.at(i) / u;
  if (A.omega == A.unit.scaled(c)) return c;
  return std::nullopt;
}

// Eigenblocks of left multiplication by [omega], when every product with it is defined.
std::optional<std::vector<EigenBlock>> omega_blocks(const AlgebraSC& A) {
  const int d = A.dim();
  Matrix L(d, std::vector<Scalar>(d));
  for (int j = 0; j < d; ++j) {
    auto col = A.multiply(A.omega, Vec::unit(j));
    if (!col) return std::nullopt;
    for (const auto& [i, c] : *col) L[i][j] = c;
  }
  return l0_decompose(L);
}

// ---------------------------------------------------------------- commands

int cmd_lemmas(const Config& c, ojson& r) {
  LemmaBox box;
  box.Ts = parse_int_list(c.T.empty() ? "1,2,3,4,6" : c.T, "T");
  box.range = c.box;
  LemmaReport rep = verify_index_lemmas(box);
  r["setup"] = {{"T", box.Ts}, {"box", box.range}, {"l_max", c.l_max}, {"samples", c.samples}, {"seed", c.seed}};
  ojson lemmas = ojson::array();
  for (const auto& l : rep.lemmas)
    lemmas.push_back({{"name", l.name}, {"cases", l.cases}, {"failures", l.failures}, {"counterexamples", failures_json(l.counterexamples)}});
  r["lemmas"] = lemmas;
  r["total_cases"] = rep.total_cases();

  BinomialReport b = verify_binomial_identities(c.l_max, sample_rational_pairs(c.samples, 6, c.seed));
  r["binomial"] = {{"checks", b.checks}, {"failures", b.failures.size()}, {"witnesses", failures_json(b.failures)}};
  const bool ok = rep.ok() && b.ok();
  r["pass"] = ok;
  return ok ? kOk : kCheckFailed;
}

int cmd_axioms(const Config& c, ojson& r) {
  Env env(c);
  auto voa_window = [&](int T) { return c.voa_window.empty() ? parse_param(c.window, T, "window", false) : parse_param(c.voa_window, T, "voa-window", false); };
  env.load(T_hint(c), [&](int T) { return c.table.empty() ? voa_window(T) : parse_param(c.table, T, "table", false); });
  const FracExp W = parse_param(c.window, env.T(), "window", false);
  const FracExp vw = voa_window(env.T());
  const FracExp mt = c.module_table.empty() ? W : parse_param(c.module_table, env.T(), "module-table");
  const Module& M = env.module(c.M.empty() ? env.default_module() : c.M, mt);
  Window win{vw, W, c.inner.empty() ? FracExp(-1, env.T()) : parse_param(c.inner, env.T(), "inner")};

  AxiomReport rep = validate_module_axioms(M, win);
  r["setup"] = {{"voa", env.V().name()}, {"T", env.T()}, {"module", M.name()}, {"voa_window", frac_json(vw)}, {"window", frac_json(W)}, {"seed", c.seed}};
  r["h"] = format_rational(M.h());
  r["cases"] = rep.cases;
  r["failure_count"] = rep.failure_count;
  r["witnesses"] = failures_json(rep.failures);
  r["bottom_L0"] = eigen_json(l0_decompose(l0_matrix(M, FracExp(0, env.T()))));
  r["pass"] = rep.ok();
  return rep.ok() ? kOk : kCheckFailed;
}

int cmd_zhu(const Config& c, ojson& r) {
  Env env(c);
  env.load(T_hint(c), [&](int T) { return windows(c, T, 2).table; });
  const Windows w = windows(c, env.T(), 2);
  const Automorphism& g = env.automorphism(c.g);
  const FracExp n = parse_param(c.n, env.T(), "n");
  AlgebraSC A = zhu_algebra(env.V(), g, n, w.W, span_options(w));

  r["setup"] = setup_json(c, env, w);
  r["g"] = g.name;
  r["n"] = frac_json(n);
  r["algebra"] = algebra_json(A);
  if (auto s = omega_scalar(A)) r["omega_scalar"] = scalar_json(*s);
  if (auto blocks = omega_blocks(A)) r["omega_eigenvalues"] = eigen_json(*blocks);
  r["dim"] = A.dim();
  r["pass"] = true;
  return kOk;
}

int cmd_bimodule(const Config& c, ojson& r) {
  Env env(c);
  env.load(T_hint(c), [&](int T) { return windows(c, T, 2).table; });
  const Windows w = windows(c, env.T(), 2);
  const FracExp n = parse_param(c.n, env.T(), "n");
  const FracExp m = parse_param(c.m, env.T(), "m");
  const FracExp mt = c.module_table.empty() ? std::max(w.W, std::max(n, m)).plus_int(2) : w.module_table;
  const Module& M1 = env.module(c.M1, mt);
  const Automorphism& g2 = env.automorphism(c.g2.empty() ? c.g : c.g2);
  Quadruple Q = env.quadruple(M1, g2);

  // Y_M of each listed module is an intertwiner of type (V, M, M) when M1 is V.
  std::vector<std::string> names = c.kernel;
  if (names.empty() && &M1 == &env.V().adjoint() && c.modefiles.empty() && c.builtin == "heisenberg" && g2.name == "theta") names.push_back("theta");
  std::vector<std::unique_ptr<ModuleMapIntertwiner>> maps;
  std::vector<KernelSource> sources;
  const FracExp ovw = c.voa_window.empty() ? w.G : parse_param(c.voa_window, env.T(), "voa-window");
  for (const auto& s : names) {
    if (&M1 != &env.V().adjoint()) throw ConfigError("--kernel needs --M1 V");
    const Module& M = env.module(s, mt);
    if (!M.twist().same_action(Q.g3)) throw ConfigError("kernel module '" + s + "' is not g3-twisted");
    maps.push_back(std::make_unique<ModuleMapIntertwiner>(M));
    sources.push_back({maps.back().get(), ovw, m});
  }

  BimoduleSC B = bimodule_present(Q, n, m, w.W, span_options(w), sources);
  r["setup"] = setup_json(c, env, w);
  r["quadruple"] = {{"M1", M1.name()}, {"g1", Q.g1.name}, {"g2", Q.g2.name}, {"g3", Q.g3.name}};
  r["n"] = frac_json(n);
  r["m"] = frac_json(m);
  r["kernel_modules"] = names;
  r["dim"] = B.dim();
  r["labels"] = B.labels;
  r["sandwich"] = {{"upper", B.upper_dim}, {"lower", B.lower_dim}, {"ok", B.sandwich_ok}};
  r["stable"] = B.stable;
  r["left_algebra_dim"] = B.left_alg.dim();
  r["right_algebra_dim"] = B.right_alg.dim();
  r["left_action"] = table_json(B.left);
  r["right_action"] = table_json(B.right);
  r["pass"] = B.sandwich_ok;
  return B.sandwich_ok ? kOk : kCheckFailed;
}

struct Induced {
  Quadruple Q;
  AlgebraSC A;
  AModule U;
};

// A_{g2,m}(V), its module on the degree-m piece of M2, and the quadruple (M1, g2).
Induced induction_data(const Config& c, Env& env, const Windows& w, const FracExp& m, const Module& M1, const Module& M2) {
  const Automorphism& g2 = c.g2.empty() ? M2.twist() : env.automorphism(c.g2);
  if (!g2.same_action(M2.twist())) throw ConfigError("--g2 is not the twist of " + M2.name());
  Quadruple Q = env.quadruple(M1, g2);
  AlgebraSC A = zhu_algebra(env.V(), g2, m, w.W, span_options(w));
  AModule U = top_module(A, M2, m);
  return {Q, std::move(A), std::move(U)};
}

ojson pieces_json(const InducedModule& X, const FracExp& maxN) {
  ojson out = ojson::array();
  for (FracExp d(0, X.T()); d <= maxN; d = FracExp(d.num() + 1, X.T()))
    out.push_back({{"degree", frac_json(d)}, {"dim", X.piece(d).dim()}, {"L0", eigen_json(l0_decompose(l0_matrix(X, d)))}});
  return out;
}

int cmd_induce(const Config& c, ojson& r) {
  Env env(c);
  env.load(T_hint(c), [&](int T) { return windows(c, T, 4).table; });
  const Windows w = windows(c, env.T(), 4);
  const FracExp m = parse_param(c.m, env.T(), "m");
  const FracExp maxN = c.max_degree.empty() ? w.W : parse_param(c.max_degree, env.T(), "max-degree");
  const Module& M1 = env.module(c.M1, w.module_table);
  const Module& M2 = env.module(c.M2.empty() ? env.default_module() : c.M2, std::max(w.module_table, m));
  Induced d = induction_data(c, env, w, m, M1, M2);
  InducedModule X("induced", d.Q, m, d.A, d.U, maxN, w.W, span_options(w));

  // Y(vac, z) = 1 on every piece
  std::uint64_t vac_cases = 0, vac_fail = 0;
  for (int x = 0; x < X.basis().size(); ++x) {
    ++vac_cases;
    if (X.act(env.V().vacuum(), FracExp(-env.T(), env.T()), x) != Vec::unit(x)) ++vac_fail;
  }
  const FracExp cw = parse_param(c.check_window, env.T(), "check-window");
  Window win{cw, maxN, c.inner.empty() ? cw.plus_int(1) : parse_param(c.inner, env.T(), "inner")};
  AxiomReport ax = validate_module_axioms(X, win);

  r["setup"] = setup_json(c, env, w);
  r["quadruple"] = {{"M1", M1.name()}, {"g1", d.Q.g1.name}, {"g2", d.Q.g2.name}, {"g3", d.Q.g3.name}};
  r["m"] = frac_json(m);
  r["seed_module"] = {{"module", M2.name()}, {"dim", d.U.dim}, {"algebra_dim", d.A.dim()}};
  r["h"] = format_rational(X.h());
  r["pieces"] = pieces_json(X, maxN);
  r["vacuum_identity"] = {{"cases", vac_cases}, {"failures", vac_fail}};
  r["axioms"] = {{"voa_window", frac_json(cw)}, {"cases", ax.cases}, {"failure_count", ax.failure_count}, {"witnesses", failures_json(ax.failures)}};
  const bool ok = vac_fail == 0 && ax.ok();
  r["pass"] = ok;
  return ok ? kOk : kCheckFailed;
}

int cmd_tensor(const Config& c, ojson& r) {
  Env env(c);
  env.load(T_hint(c), [&](int T) { return windows(c, T, 4).table; });
  const Windows w = windows(c, env.T(), 4);
  const FracExp m = parse_param(c.m, env.T(), "m");
  const FracExp maxN = c.max_degree.empty() ? FracExp::integer(2, env.T()) : parse_param(c.max_degree, env.T(), "max-degree");
  const Module& M1 = env.module(c.M1, w.module_table);
  const Module& M2 = env.module(c.M2.empty() ? env.default_module() : c.M2, std::max(w.module_table, m));
  Induced d = induction_data(c, env, w, m, M1, M2);
  // M2 itself presented as the induced module over (V, 1, g2, g2) on the same seed
  Quadruple Q2 = Quadruple::make(env.V().adjoint(), d.Q.g2);
  InducedModule P2("M2", Q2, m, d.A, d.U, maxN, w.W, span_options(w));
  InducedModule Mcal("Mcal", d.Q, m, d.A, d.U, maxN, w.W, span_options(w));
  FcircIntertwiner F(d.Q, P2, Mcal);

  const int T = env.T();
  const Voa& V = env.V();
  const Quadruple& Q = d.Q;
  ExponentRule beta = [&](int a, int, int v2) { return FracExp::integer(V.wt(a), T) + lambda(P2.deg(v2), Q.g2(a)); };
  ExponentRule alpha = [&](int a, int v, int) { return FracExp::integer(V.wt(a), T) + lambda(M1.deg(v), Q.g1(a)); };
  const FracExp cw = parse_param(c.check_window, T, "check-window");
  const CheckGrid grid{cw, cw, std::min(cw, maxN), true, c.inner.empty() ? cw.plus_int(1) : parse_param(c.inner, T, "inner")};
  AxiomReport ra = check_associativity(F, beta, grid);
  AxiomReport rc = check_commutativity(F, alpha, grid);
  CheckReport rl = check_l0_commutator(F, cw, std::min(cw, maxN));

  r["setup"] = setup_json(c, env, w);
  r["quadruple"] = {{"M1", M1.name()}, {"g1", Q.g1.name}, {"g2", Q.g2.name}, {"g3", Q.g3.name}};
  r["m"] = frac_json(m);
  r["seed_module"] = {{"module", M2.name()}, {"dim", d.U.dim}};
  r["h"] = format_rational(Mcal.h());
  r["pieces"] = pieces_json(Mcal, maxN);
  auto rep = [](std::uint64_t cases, std::uint64_t fails, const std::vector<std::string>& wit) {
    return ojson{{"cases", cases}, {"failure_count", fails}, {"witnesses", failures_json(wit)}};
  };
  r["associativity"] = rep(ra.cases, ra.failure_count, ra.failures);
  r["commutativity"] = rep(rc.cases, rc.failure_count, rc.failures);
  r["L0_commutator"] = rep(rl.cases, rl.failure_count, rl.failures);
  const bool ok = ra.ok() && rc.ok() && rl.ok();
  r["pass"] = ok;
  return ok ? kOk : kCheckFailed;
}

int cmd_fusion(const Config& c, ojson& r) {
  Env env(c);
  env.load(T_hint(c), [&](int T) { return windows(c, T, 4).table; });
  const Windows w = windows(c, env.T(), 4);
  const FracExp m = parse_param(c.m, env.T(), "m");
  const FracExp mt = std::max(w.module_table, m);
  const Module& M1 = env.module(c.M1, mt);
  const Module& M2 = env.module(c.M2.empty() ? env.default_module() : c.M2, mt);
  const Module& M3 = env.module(c.M3.empty() ? env.default_module() : c.M3, mt);
  const Automorphism& g2 = c.g2.empty() ? M2.twist() : env.automorphism(c.g2);
  Quadruple Q = env.quadruple(M1, g2);
  if (!M3.twist().same_action(Q.g3)) throw ConfigError(M3.name() + " is not g3-twisted");
  FusionResult f = fusion_upper_bound(Q, M2, M3, m, w.W, span_options(w), w.W);

  r["setup"] = setup_json(c, env, w);
  r["quadruple"] = {{"M1", M1.name()}, {"g1", Q.g1.name}, {"g2", Q.g2.name}, {"g3", Q.g3.name}};
  r["M2"] = M2.name();
  r["M3"] = M3.name();
  r["m"] = frac_json(m);
  r["value"] = f.dim;
  r["value_next_gen_window"] = f.dim_next;
  r["stable"] = f.stable;
  r["tensor_dim"] = f.tensor_dim;
  r["pass"] = true;
  return kOk;
}

// ---------------------------------------------------------------- driver

void add_common(CLI::App* s, Config& c) {
  s->add_option("--T", c.T, "order of the twist (lemmas: comma-separated list)");
  s->add_option("--builtin", c.builtin, "heisenberg or trivial");
  s->add_option("--modefile", c.modefiles, "VOA and module mode files (repeatable)");
  s->add_option("--g", c.g, "automorphism for zhu");
  s->add_option("--g1", c.g1, "twist of M1 (checked)");
  s->add_option("--g2", c.g2, "automorphism g2");
  s->add_option("--g3", c.g3, "g1 g2 (checked)");
  s->add_option("--n", c.n);
  s->add_option("--m", c.m);
  s->add_option("--p", c.p);
  s->add_option("--window", c.window, "presentation window");
  s->add_option("--gen-window", c.gen_window, "generator window (default window + 2)");
  s->add_option("--table", c.table, "VOA table weight");
  s->add_option("--module-table", c.module_table, "top degree of builtin module tables");
  s->add_option("--voa-window", c.voa_window);
  s->add_option("--check-window", c.check_window, "VOA weights used by identity checks");
  s->add_option("--inner", c.inner, "cap on intermediate degrees in associativity checks");
  s->add_option("--max-degree", c.max_degree, "top degree of induced modules");
  s->add_option("--M", c.M, "module to validate");
  s->add_option("--M1", c.M1);
  s->add_option("--M2", c.M2);
  s->add_option("--M3", c.M3);
  s->add_option("--kernel", c.kernel, "modules whose Y_M bounds the bimodule from below (repeatable)");
  s->add_option("--out", c.out, "report path (default $TWZHU_OUT_DIR/<command>.json, else stdout)");
  s->add_option("--seed", c.seed);
}

void emit(const Config& c, const ojson& report) {
  std::string path = c.out;
  if (path.empty())
    if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) path = std::string(dir) + "/" + c.command + ".json";
  const std::string text = report.dump(2) + "\n";
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << text;
  std::cout << c.command << ": " << (report.value("pass", false) ? "pass" : "FAIL") << " -> " << path << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  Config c;
  CLI::App app{"twisted Zhu algebra workbench"};
  app.require_subcommand(1);
  const std::vector<std::pair<std::string, int (*)(const Config&, ojson&)>> commands{
      {"lemmas", cmd_lemmas}, {"axioms", cmd_axioms}, {"zhu", cmd_zhu}, {"bimodule", cmd_bimodule},
      {"induce", cmd_induce}, {"tensor", cmd_tensor}, {"fusion", cmd_fusion}};
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, fn] : commands) {
    CLI::App* s = app.add_subcommand(name);
    add_common(s, c);
    if (name == "lemmas") {
      s->add_option("--box", c.box, "integer parts run over [-box, box]");
      s->add_option("--l-max", c.l_max);
      s->add_option("--samples", c.samples);
    }
    subs[name] = s;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  for (const auto& [name, fn] : commands) {
    if (!subs[name]->parsed()) continue;
    c.command = name;
    ojson report = header(c);
    int code = kOk;
    try {
      code = fn(c, report);
    } catch (const InsufficientTable& e) {
      report["error"] = {{"kind", "InsufficientTable"}, {"message", e.what()}};
      code = kTable;
    } catch (const ConfigError& e) {
      report["error"] = {{"kind", "config"}, {"message", e.what()}};
      code = kConfig;
    } catch (const SchemaError& e) {
      report["error"] = {{"kind", "SchemaError"}, {"message", e.what()}};
      code = kConfig;
    } catch (const InvalidBox& e) {
      report["error"] = {{"kind", "InvalidBox"}, {"message", e.what()}};
      code = kConfig;
    } catch (const ContextMismatch& e) {
      report["error"] = {{"kind", "ContextMismatch"}, {"message", e.what()}};
      code = kConfig;
    } catch (const Error& e) {
      // AxiomViolation, NotAModule, NonDiagonalizable: a failed check with its witness
      report["error"] = {{"kind", "check"}, {"message", e.what()}};
      report["pass"] = false;
      code = kCheckFailed;
    }
    report["exit"] = code;
    try {
      emit(c, report);
    } catch (const ConfigError& e) {
      std::cerr << e.what() << "\n";
      return kConfig;
    }
    if (code != kOk && report.contains("error")) std::cerr << c.command << ": " << report["error"]["message"].get<std::string>() << "\n";
    return code;
  }
  return kConfig;
}
