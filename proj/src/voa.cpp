#include "twzhu/voa.hpp"

#include <sstream>

namespace twzhu {

int GradedBasis::add(BasisElement e) {
  if (e.deg.T() != T_) throw ContextMismatch("basis element degree over wrong T");
  if (e.deg < FracExp(0, T_)) throw SchemaError("negative degree for '" + e.label + "'");
  if (by_label_.count(e.label)) throw SchemaError("duplicate basis label '" + e.label + "'");
  int idx = size();
  by_label_[e.label] = idx;
  by_degree_[e.deg].push_back(idx);
  elems_.push_back(std::move(e));
  return idx;
}

int GradedBasis::find(const std::string& label) const {
  auto it = by_label_.find(label);
  return it == by_label_.end() ? -1 : it->second;
}

const std::vector<int>& GradedBasis::of_degree(const FracExp& d) const {
  static const std::vector<int> empty;
  auto it = by_degree_.find(d);
  return it == by_degree_.end() ? empty : it->second;
}

std::vector<int> GradedBasis::up_to(const FracExp& d) const {
  std::vector<int> out;
  for (const auto& [deg, idx] : by_degree_) {
    if (deg > d) break;
    out.insert(out.end(), idx.begin(), idx.end());
  }
  return out;
}

std::vector<FracExp> GradedBasis::degrees() const {
  std::vector<FracExp> out;
  for (const auto& kv : by_degree_) out.push_back(kv.first);
  return out;
}

FracExp GradedBasis::max_degree() const {
  if (by_degree_.empty()) return FracExp(-1, T_);
  return by_degree_.rbegin()->first;
}

bool Automorphism::is_identity() const {
  for (int r : eigen)
    if (r != 0) return false;
  return true;
}

Automorphism Automorphism::inverse() const {
  Automorphism g = *this;
  g.name = name + "^-1";
  for (auto& r : g.eigen) r = (T - r) % T;
  return g;
}

Automorphism Automorphism::compose(const Automorphism& o) const {
  if (T != o.T || eigen.size() != o.eigen.size()) throw ContextMismatch("composing automorphisms over different data");
  Automorphism g = *this;
  g.name = name + "*" + o.name;
  for (std::size_t i = 0; i < eigen.size(); ++i) g.eigen[i] = (eigen[i] + o.eigen[i]) % T;
  return g;
}

// ---------------------------------------------------------------- Module

FracExp Module::out_degree(int a, const FracExp& n, int v) const {
  const Voa& V = voa();
  return deg(v) + FracExp::integer(V.wt(a) - 1, T()) - n;
}

bool Module::in_mode_class(int a, const FracExp& n) const {
  return n.tilde() == twist()(a);
}

Vec Module::act(int a, const FracExp& n, int v) const {
  if (n.T() != T()) throw ContextMismatch("mode index over wrong T");
  if (!in_mode_class(a, n)) return {};
  FracExp d = out_degree(a, n, v);
  if (d < FracExp(0, T())) return {};
  if (d > basis().max_degree())
    throw InsufficientTable(name() + ": mode (" + voa().basis()[a].label + ")_(" + n.str() + ") on " + basis()[v].label +
                            " lands in degree " + d.str() + " beyond window " + basis().max_degree().str());
  auto key = std::make_tuple(a, n.num(), v);
  {
    std::lock_guard<std::mutex> lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Vec r = compute(a, n, v);
  std::lock_guard<std::mutex> lock(cache_mutex_);
  cache_.emplace(key, r);
  return r;
}

Vec Module::act(int a, const FracExp& n, const Vec& v) const {
  Vec out;
  for (const auto& [vi, c] : v) out.axpy(c, act(a, n, vi));
  return out;
}

Vec Module::act(const Vec& a, const FracExp& n, const Vec& v) const {
  Vec out;
  for (const auto& [ai, ca] : a)
    for (const auto& [vi, cv] : v) out.axpy(ca * cv, act(ai, n, vi));
  return out;
}

// ---------------------------------------------------------------- Voa

Voa::Voa(std::string name, GradedBasis basis, int vacuum, Vec omega, Rational central_charge)
    : name_(std::move(name)), basis_(std::move(basis)), vacuum_(vacuum), omega_(std::move(omega)), c_(central_charge) {
  for (int i = 0; i < basis_.size(); ++i)
    if (!basis_[i].deg.is_integer()) throw SchemaError("VOA basis element '" + basis_[i].label + "' has non-integral weight");
  Automorphism id{"id", T(), std::vector<int>(basis_.size(), 0)};
  autos_.push_back(std::move(id));
}

std::int64_t Voa::wt(int a) const { return basis_[a].deg.floor(); }

void Voa::add_automorphism(Automorphism g) {
  if (g.T != T() || static_cast<int>(g.eigen.size()) != basis_.size()) throw SchemaError("automorphism '" + g.name + "' does not match the VOA basis");
  for (int r : g.eigen)
    if (r < 0 || r >= T()) throw SchemaError("automorphism residue outside [0, T)");
  for (auto& a : autos_)
    if (a.name == g.name) {
      a = std::move(g);
      return;
    }
  autos_.push_back(std::move(g));
}

const Automorphism& Voa::automorphism(const std::string& name) const {
  for (const auto& a : autos_)
    if (a.name == name) return a;
  throw SchemaError("unknown automorphism '" + name + "' for " + name_);
}

std::vector<std::string> Voa::automorphism_names() const {
  std::vector<std::string> out;
  for (const auto& a : autos_) out.push_back(a.name);
  return out;
}

// ---------------------------------------------------------------- TableModule

void TableModule::set(int a, const FracExp& n, int v, Vec out) {
  auto key = std::make_tuple(a, n.num(), v);
  if (out.empty())
    table_.erase(key);
  else
    table_[key] = std::move(out);
}

Vec TableModule::compute(int a, const FracExp& n, int v) const {
  auto it = table_.find(std::make_tuple(a, n.num(), v));
  return it == table_.end() ? Vec{} : it->second;
}

std::shared_ptr<Voa> make_trivial_voa(int T) {
  GradedBasis B(T);
  B.add({"vac", FracExp(0, T)});
  auto V = std::make_shared<Voa>("trivial", B, 0, Vec{}, Rational(0));
  auto adj = std::make_unique<TableModule>("trivial", V.get(), B, Rational(0), V->identity());
  adj->set(0, FracExp::integer(-1, T), 0, Vec::unit(0));
  V->set_adjoint(std::move(adj));
  return V;
}

std::map<FracExp, Vec> homogeneous_parts(const GradedBasis& B, const Vec& v) {
  std::map<FracExp, Vec> out;
  for (const auto& [i, c] : v) out[B[i].deg].add(i, c);
  return out;
}

std::string vec_to_string(const GradedBasis& B, const Vec& v) {
  if (v.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : v) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")" << B[i].label;
  }
  return os.str();
}

}  // namespace twzhu
