#include "twzhu/modefile.hpp"

#include <fstream>
#include <set>

namespace twzhu {

using nlohmann::json;

namespace {

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw SchemaError(std::string("mode file: missing field '") + key + "'");
  return doc.at(key);
}

std::string str_field(const json& doc, const char* key) {
  const json& f = field(doc, key);
  if (!f.is_string()) throw SchemaError(std::string("mode file: field '") + key + "' must be a string");
  return f.get<std::string>();
}

FracExp parse_exp(const json& j, int T, const std::string& what) {
  if (!j.is_string()) throw SchemaError("mode file: " + what + " must be a string \"p/q\"");
  Rational r = parse_rational(j.get<std::string>());
  try {
    return FracExp::from_rational(r, T);
  } catch (const ContextMismatch&) {
    throw SchemaError("mode file: " + what + " = " + j.get<std::string>() + " is not in (1/T)Z");
  }
}

GradedBasis parse_basis(const json& doc, int T, bool voa) {
  const json& arr = field(doc, "basis");
  if (!arr.is_array() || arr.empty()) throw SchemaError("mode file: empty basis");
  GradedBasis B(T);
  for (const auto& e : arr) {
    BasisElement b;
    b.label = str_field(e, "label");
    b.deg = parse_exp(field(e, "deg"), T, "degree of '" + b.label + "'");
    if (voa) {
      b.j1 = e.value("j1", 0);
      b.j2 = e.value("j2", 0);
      if (b.j1 < 0 || b.j1 >= T || b.j2 < 0 || b.j2 >= T) throw SchemaError("mode file: eigendata of '" + b.label + "' outside [0, T)");
    }
    B.add(std::move(b));
  }
  return B;
}

int resolve(const GradedBasis& B, const std::string& label, const std::string& what) {
  int i = B.find(label);
  if (i < 0) throw SchemaError("mode file: unknown " + what + " label '" + label + "'");
  return i;
}

std::string entry_name(const std::string& a, const FracExp& n, const std::string& b) { return "(" + a + ", " + format_rational(n.to_rational()) + ", " + b + ")"; }

/// Reads the "modes" array into M, checking labels, mode class, grading and, on a VOA,
/// additivity of the eigendata.
void read_modes(const json& doc, TableModule& M, const Voa& V, bool voa) {
  if (!doc.contains("modes")) return;
  const json& modes = doc.at("modes");
  if (!modes.is_array()) throw SchemaError("mode file: 'modes' must be an array");
  const GradedBasis& A = V.basis();
  const GradedBasis& B = M.basis();
  const int T = B.T();
  std::set<std::tuple<int, std::int64_t, int>> seen;
  for (const auto& e : modes) {
    const std::string al = str_field(e, "a"), bl = str_field(e, "b");
    int a = resolve(A, al, "VOA");
    int b = resolve(B, bl, "target");
    FracExp n = parse_exp(field(e, "n"), T, "mode index");
    const std::string name = entry_name(al, n, bl);
    if (!seen.insert({a, n.num(), b}).second) throw SchemaError("mode file: duplicate entry " + name);
    if (!M.in_mode_class(a, n)) throw AxiomViolation("mode-support rule violated by entry " + name);
    const FracExp want = M.out_degree(a, n, b);
    Vec out;
    const json& o = field(e, "out");
    if (!o.is_array()) throw SchemaError("mode file: 'out' of " + name + " must be an array");
    for (const auto& term : o) {
      if (!term.is_array() || term.size() != 2 || !term[0].is_string()) throw SchemaError("mode file: malformed term in " + name);
      int c = resolve(B, term[0].get<std::string>(), "output");
      if (B[c].deg != want)
        throw AxiomViolation("grading rule violated by entry " + name + ": output '" + B[c].label + "' has degree " + B[c].deg.str() + ", expected " + want.str());
      if (voa && (B[c].j1 != (A[a].j1 + B[b].j1) % T || B[c].j2 != (A[a].j2 + B[b].j2) % T))
        throw AxiomViolation("eigendata not additive in entry " + name + " at output '" + B[c].label + "'");
      out.add(c, scalar_from_json(term[1]));
    }
    M.set(a, n, b, std::move(out));
  }
}

Automorphism eigen_automorphism(const std::string& name, const GradedBasis& B, bool second) {
  Automorphism g{name, B.T(), {}};
  for (int i = 0; i < B.size(); ++i) g.eigen.push_back(second ? B[i].j2 : B[i].j1);
  return g;
}

void write_modes(const Module& M, json& modes) {
  const Voa& V = M.voa();
  const GradedBasis& A = V.basis();
  const GradedBasis& B = M.basis();
  const int T = B.T();
  const FracExp top = B.max_degree();
  for (int a = 0; a < A.size(); ++a)
    for (int b = 0; b < B.size(); ++b) {
      // output degree deg b + wt a - 1 - n runs from 0 up to the top of the window
      const FracExp hi = B[b].deg + FracExp::integer(V.wt(a) - 1, T);
      for (FracExp n = hi - top; n <= hi; n += FracExp(1, T)) {
        if (!M.in_mode_class(a, n)) continue;
        Vec out = M.act(a, n, b);
        if (out.empty()) continue;
        json terms = json::array();
        for (const auto& [c, x] : out) terms.push_back(json::array({B[c].label, scalar_to_json(x)}));
        modes.push_back({{"a", A[a].label}, {"n", format_rational(n.to_rational())}, {"b", B[b].label}, {"out", terms}});
      }
    }
}

}  // namespace

json scalar_to_json(const Scalar& s) {
  if (s.is_rational()) return format_rational(s.rational());
  json coeffs = json::array();
  for (const auto& c : s.coeffs()) coeffs.push_back(format_rational(c));
  return {{"N", s.modulus()}, {"coeffs", coeffs}};
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return Scalar(parse_rational(j.get<std::string>()));
  if (j.is_number_integer()) return Scalar(Rational(j.get<long>()));
  if (j.is_object() && j.contains("N") && j.contains("coeffs")) {
    int N = j.at("N").get<int>();
    if (N < 1) throw SchemaError("scalar modulus must be positive");
    std::vector<Rational> c;
    for (const auto& x : j.at("coeffs")) {
      if (!x.is_string()) throw SchemaError("cyclotomic coefficients must be strings \"p/q\"");
      c.push_back(parse_rational(x.get<std::string>()));
    }
    return Scalar(N, std::move(c));
  }
  throw SchemaError("malformed scalar " + j.dump());
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open mode file '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("mode file '" + path + "': " + e.what());
  }
}

std::shared_ptr<Voa> load_voa(const json& doc) {
  try {
    if (str_field(doc, "kind") != "voa") throw SchemaError("mode file: expected kind \"voa\"");
    const int T = field(doc, "T").get<int>();
    if (T < 1) throw SchemaError("mode file: T must be positive");
    GradedBasis B = parse_basis(doc, T, true);
    int vac = resolve(B, str_field(doc, "vacuum"), "vacuum");
    if (B[vac].deg != FracExp(0, T)) throw SchemaError("mode file: vacuum must have degree 0");
    Vec omega;
    if (doc.contains("omega") && !doc.at("omega").is_null()) {
      int w = resolve(B, str_field(doc, "omega"), "omega");
      if (B[w].deg != FracExp::integer(2, T)) throw SchemaError("mode file: omega must have degree 2");
      omega = Vec::unit(w);
    }
    Rational c = doc.contains("c") ? parse_rational(doc.at("c").get<std::string>()) : Rational(0);
    auto V = std::make_shared<Voa>(doc.value("name", std::string("voa")), B, vac, omega, c);
    Automorphism g1 = eigen_automorphism("g1", B, false), g2 = eigen_automorphism("g2", B, true);
    Automorphism g3 = g1.compose(g2);
    g3.name = "g3";
    V->add_automorphism(g1);
    V->add_automorphism(g2);
    V->add_automorphism(g3);
    auto adj = std::make_unique<TableModule>(V->name(), V.get(), B, Rational(0), V->identity());
    read_modes(doc, *adj, *V, true);
    V->set_adjoint(std::move(adj));
    return V;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("mode file: ") + e.what());
  }
}

std::shared_ptr<Module> load_module(const json& doc, std::shared_ptr<const Voa> V) {
  try {
    if (str_field(doc, "kind") != "module") throw SchemaError("mode file: expected kind \"module\"");
    const int T = field(doc, "T").get<int>();
    if (T != V->T()) throw SchemaError("mode file: module T differs from the VOA");
    GradedBasis B = parse_basis(doc, T, false);
    Rational h = parse_rational(str_field(doc, "h"));
    const Automorphism& g = V->automorphism(doc.value("twist", std::string("id")));
    auto M = std::make_shared<LoadedModule>(doc.value("name", std::string("module")), V, B, h, g);
    read_modes(doc, *M, *V, false);
    return M;
  } catch (const json::exception& e) {
    throw SchemaError(std::string("mode file: ") + e.what());
  }
}

json export_voa(const Voa& V, const Automorphism& g1, const Automorphism& g2) {
  const GradedBasis& B = V.basis();
  json basis = json::array();
  for (int i = 0; i < B.size(); ++i)
    basis.push_back({{"label", B[i].label}, {"deg", format_rational(B[i].deg.to_rational())}, {"j1", g1(i)}, {"j2", g2(i)}});
  json modes = json::array();
  write_modes(V.adjoint(), modes);
  json doc = {{"T", V.T()}, {"kind", "voa"}, {"name", V.name()}, {"c", format_rational(V.central_charge())},
              {"basis", basis}, {"vacuum", B[V.vacuum()].label}};
  if (!V.omega().empty() && (V.omega().size() != 1 || V.omega().begin()->second != Scalar(1)))
    throw SchemaError("export needs omega to be a single basis vector");
  doc["omega"] = V.omega().empty() ? json(nullptr) : json(B[V.omega().begin()->first].label);
  doc["modes"] = modes;
  return doc;
}

json export_module(const Module& M, const std::string& twist) {
  const GradedBasis& B = M.basis();
  json basis = json::array();
  for (int i = 0; i < B.size(); ++i) basis.push_back({{"label", B[i].label}, {"deg", format_rational(B[i].deg.to_rational())}});
  json modes = json::array();
  write_modes(M, modes);
  return {{"T", M.T()}, {"kind", "module"}, {"name", M.name()}, {"h", format_rational(M.h())},
          {"twist", twist}, {"basis", basis}, {"modes", modes}};
}

}  // namespace twzhu
