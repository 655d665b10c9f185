#include <algorithm>
#include <functional>

#include "twzhu/voa.hpp"

namespace twzhu {

namespace {

using State = std::vector<int>;  // multiplicity per slot

/// Oscillator Fock space: slot k carries the mode value s_k > 0.
struct FockSpace {
  int T = 1;
  bool twisted = false;
  std::vector<FracExp> slot_value;
  std::vector<State> states;
  std::map<State, int> index;
  std::string prefix;

  FracExp degree(const State& st) const {
    FracExp d(0, T);
    for (std::size_t k = 0; k < st.size(); ++k) d += FracExp(slot_value[k].num() * st[k], T);
    return d;
  }
  /// Slot whose mode value is s, or -1.
  int slot_of(const FracExp& s) const {
    if (twisted) {
      // s = (2k+1)/2
      if (2 * s.num() % s.T() != 0) return -1;
      std::int64_t twice = 2 * s.num() / s.T();
      if (twice <= 0 || twice % 2 == 0) return -1;
      std::int64_t k = (twice - 1) / 2;
      return k < static_cast<std::int64_t>(slot_value.size()) ? static_cast<int>(k) : -2;
    }
    if (!s.is_integer() || s.num() <= 0) return -1;
    std::int64_t k = s.floor() - 1;
    return k < static_cast<std::int64_t>(slot_value.size()) ? static_cast<int>(k) : -2;
  }
};

std::string value_str(const FracExp& s) {
  Rational r = s.to_rational();
  return r.get_den() == 1 ? r.get_num().get_str() : format_rational(r);
}

std::shared_ptr<FockSpace> build_space(int T, bool twisted, const FracExp& max_degree, const std::string& prefix) {
  auto F = std::make_shared<FockSpace>();
  F->T = T;
  F->twisted = twisted;
  F->prefix = prefix;
  if (twisted && T % 2 != 0) throw ContextMismatch("theta-twisted modes need even T");
  for (int k = 0;; ++k) {
    FracExp s = twisted ? FracExp((2 * k + 1) * (T / 2), T) : FracExp::integer(k + 1, T);
    if (s > max_degree) break;
    F->slot_value.push_back(s);
  }
  const int ns = static_cast<int>(F->slot_value.size());
  // enumerate partitions with parts taken from the slots, largest slot first
  std::vector<std::pair<std::vector<int>, State>> found;  // (parts descending, state)
  State cur(ns, 0);
  std::vector<int> parts;
  std::function<void(int, std::int64_t)> rec = [&](int maxslot, std::int64_t budget) {
    found.emplace_back(parts, cur);
    for (int k = maxslot; k >= 0; --k) {
      std::int64_t v = F->slot_value[k].num();
      if (v > budget) continue;
      ++cur[k];
      parts.push_back(k);
      rec(k, budget - v);
      parts.pop_back();
      --cur[k];
    }
  };
  rec(ns - 1, max_degree.num());
  std::sort(found.begin(), found.end(), [&](const auto& x, const auto& y) {
    FracExp dx = F->degree(x.second), dy = F->degree(y.second);
    if (dx != dy) return dx < dy;
    return x.first > y.first;
  });
  for (auto& [p, st] : found) {
    F->index[st] = static_cast<int>(F->states.size());
    F->states.push_back(st);
  }
  return F;
}

std::string state_label(const FockSpace& F, const State& st) {
  std::string s;
  for (int k = static_cast<int>(st.size()) - 1; k >= 0; --k) {
    if (st[k] == 0) continue;
    s += F.prefix + "(-" + value_str(F.slot_value[k]) + ")";
    if (st[k] > 1) s += "^(" + std::to_string(st[k]) + ")";
  }
  return s.empty() ? (F.prefix == "h" ? std::string("vac") : F.prefix + "vac") : s;
}

GradedBasis basis_of(const FockSpace& F) {
  GradedBasis B(F.T);
  for (const auto& st : F.states) B.add({state_label(F, st), F.degree(st)});
  return B;
}

Rational factorial(int n) {
  Rational r(1);
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

using Work = std::map<State, Scalar>;

void work_add(Work& w, const State& st, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = w.find(st);
  if (it == w.end()) {
    w.emplace(st, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) w.erase(it);
}

class HeisenbergVoa : public Voa {
 public:
  HeisenbergVoa(std::shared_ptr<const FockSpace> F, GradedBasis B, int vac, Vec omega)
      : Voa("heisenberg", std::move(B), vac, std::move(omega), Rational(1)), space(std::move(F)) {}
  std::shared_ptr<const FockSpace> space;
};

class FockModule : public Module {
 public:
  FockModule(const HeisenbergVoa* V, std::shared_ptr<const FockSpace> F, FockKind kind, Rational momentum, std::string name)
      : V_(V), F_(std::move(F)), kind_(kind), lambda_(momentum), name_(std::move(name)), basis_(basis_of(*F_)) {
    twist_ = kind == FockKind::theta_twisted ? V->automorphism("theta") : V->identity();
    const int W = static_cast<int>(V_->basis().max_degree().floor());
    if (kind == FockKind::theta_twisted) corr_ = twist_correction_coefficients(W);
  }

  const Voa& voa() const override { return *V_; }
  const GradedBasis& basis() const override { return basis_; }
  // Read off from L(0) on the lowest state; it is not an input of the construction.
  Rational h() const override {
    std::call_once(h_once_, [&] {
      if (V_->omega().empty()) {
        h_ = kind_ == FockKind::theta_twisted ? Rational(1, 16) : lambda_ * lambda_ / 2;
        return;
      }
      Vec l0 = act(V_->omega(), FracExp::integer(1, F_->T), Vec::unit(0));
      h_ = l0.at(0).rational();
    });
    return h_;
  }
  const Automorphism& twist() const override { return twist_; }
  std::string name() const override { return name_; }

 protected:
  Vec compute(int a, const FracExp& n, int v) const override {
    const int T = F_->T;
    Work out;
    if (kind_ == FockKind::theta_twisted) {
      for (const auto& [j, b] : corrected(a)) {
        FracExp k = n - FracExp::integer(j, T);
        for (const auto& [bi, c] : b) normal_ordered(bi, k, F_->states[v], c, out);
      }
    } else {
      normal_ordered(a, n, F_->states[v], Scalar(1), out);
    }
    Vec r;
    for (const auto& [st, c] : out) {
      auto it = F_->index.find(st);
      if (it == F_->index.end()) throw InsufficientTable(name_ + ": state outside the tabulated window");
      r.add(it->second, c);
    }
    return r;
  }

 private:
  // Mode k of the normal-ordered product attached to the VOA monomial b, applied to st.
  void normal_ordered(int b, const FracExp& k, const State& st, const Scalar& scale, Work& out) const {
    const FockSpace& VF = *V_->space;
    const State& mono = VF.states[b];
    const int T = F_->T;
    std::vector<int> dorder;  // derivative order per factor
    Rational norm(1);
    for (std::size_t s = 0; s < mono.size(); ++s) {
      for (int r = 0; r < mono[s]; ++r) dorder.push_back(static_cast<int>(s));  // part s+1 -> order s
      norm /= factorial(mono[s]);
    }
    const FracExp wt = VF.degree(mono);
    const FracExp target = k + FracExp::integer(1, T) - wt;  // sum of mode values
    const int nf = static_cast<int>(dorder.size());
    if (nf == 0) {
      if (target == FracExp(0, T)) work_add(out, st, scale * Scalar(norm));
      return;
    }
    const FracExp outdeg = F_->degree(st) - target;
    if (outdeg < FracExp(0, T)) return;

    std::vector<int> deferred;
    State cur = st;
    // phase 2: creation or zero modes for deferred factors; `need` is the remaining sum
    std::function<void(std::size_t, FracExp, Rational)> create = [&](std::size_t i, FracExp need, Rational coef) {
      if (i == deferred.size()) {
        if (need == FracExp(0, T)) work_add(out, cur, scale * Scalar(coef * norm));
        return;
      }
      const int d = dorder[deferred[i]];
      if (kind_ == FockKind::untwisted && lambda_ != 0) {
        Rational b = gen_binomial(Rational(-1), d);
        create(i + 1, need, coef * b * lambda_);
      }
      for (std::size_t slot = 0; slot < F_->slot_value.size(); ++slot) {
        const FracExp& sv = F_->slot_value[slot];
        if (FracExp(0, T) - sv < need) break;  // mode -sv overshoots
        Rational b = gen_binomial(sv.to_rational() - 1, d);  // binom(-s-1, d) with s = -sv
        if (b == 0) continue;
        Rational c = coef * b * (cur[slot] + 1);
        ++cur[slot];
        create(i + 1, need + sv, c);
        --cur[slot];
      }
    };
    // phase 1: annihilation modes in the current state
    std::function<void(int, FracExp, Rational)> annihilate = [&](int i, FracExp sum, Rational coef) {
      if (i == nf) {
        create(0, target - sum, coef);
        return;
      }
      deferred.push_back(i);
      annihilate(i + 1, sum, coef);
      deferred.pop_back();
      const int d = dorder[i];
      for (std::size_t slot = 0; slot < cur.size() && slot < F_->slot_value.size(); ++slot) {
        if (cur[slot] == 0) continue;
        const FracExp& sv = F_->slot_value[slot];
        Rational b = gen_binomial(-sv.to_rational() - 1, d);
        if (b == 0) continue;
        --cur[slot];
        annihilate(i + 1, sum + sv, coef * b * sv.to_rational());
        ++cur[slot];
      }
    };
    annihilate(0, FracExp(0, T), Rational(1));
  }

  // e^{Delta_z} a as (power j of z^{-1}, VOA vector of weight wt a - j)
  const std::map<int, Vec>& corrected(int a) const {
    std::lock_guard<std::mutex> lock(corr_mutex_);
    auto it = corr_cache_.find(a);
    if (it != corr_cache_.end()) return it->second;
    const FockSpace& VF = *V_->space;
    std::map<int, Vec> total;
    std::map<int, Vec> term;
    term[0] = Vec::unit(a);
    total[0] = term[0];
    for (int iter = 1; !term.empty(); ++iter) {
      std::map<int, Vec> next;
      for (const auto& [j, vec] : term)
        for (const auto& [bi, c] : vec) {
          const State& st = VF.states[bi];
          for (std::size_t m = 0; m < st.size(); ++m) {
            if (st[m] == 0) continue;
            State s1 = st;
            --s1[m];
            Rational c1 = Rational(static_cast<long>(m + 1));
            for (std::size_t nn = 0; nn < s1.size(); ++nn) {
              if (s1[nn] == 0) continue;
              State s2 = s1;
              --s2[nn];
              Rational c2 = c1 * Rational(static_cast<long>(nn + 1));
              const Rational& cmn = corr_[nn + 1][m + 1];
              if (cmn == 0) continue;
              next[j + static_cast<int>(m + nn + 2)].add(VF.index.at(s2), c * Scalar(cmn * c2 / iter));
            }
          }
        }
      for (auto it2 = next.begin(); it2 != next.end();)
        it2 = it2->second.empty() ? next.erase(it2) : std::next(it2);
      for (const auto& [j, vec] : next) total[j] += vec;
      term = std::move(next);
    }
    for (auto it2 = total.begin(); it2 != total.end();)
      it2 = it2->second.empty() ? total.erase(it2) : std::next(it2);
    return corr_cache_.emplace(a, std::move(total)).first->second;
  }

  const HeisenbergVoa* V_;
  std::shared_ptr<const FockSpace> F_;
  FockKind kind_;
  Rational lambda_;
  std::string name_;
  GradedBasis basis_;
  Automorphism twist_;
  mutable std::once_flag h_once_;
  mutable Rational h_;
  std::vector<std::vector<Rational>> corr_;
  mutable std::mutex corr_mutex_;
  mutable std::map<int, std::map<int, Vec>> corr_cache_;
};

}  // namespace

std::vector<std::vector<Rational>> twist_correction_coefficients(int order) {
  const int D = std::max(order, 0) + 1;
  using Poly = std::vector<std::vector<Rational>>;  // [i][j] coefficient of x^i y^j, i + j < D
  auto zero = [&] { return Poly(D, std::vector<Rational>(D, Rational(0))); };
  auto mul = [&](const Poly& p, const Poly& q) {
    Poly r = zero();
    for (int i = 0; i < D; ++i)
      for (int j = 0; i + j < D; ++j) {
        if (p[i][j] == 0) continue;
        for (int k = 0; i + k < D; ++k)
          for (int l = 0; i + j + k + l < D; ++l)
            if (q[k][l] != 0) r[i + k][j + l] += p[i][j] * q[k][l];
      }
    return r;
  };
  // eps = ((1+x)^{1/2} + (1+y)^{1/2}) / 2 - 1
  Poly eps = zero();
  for (int i = 1; i < D; ++i) {
    Rational b = gen_binomial(Rational(1, 2), i) / 2;
    eps[i][0] += b;
    eps[0][i] += b;
  }
  Poly result = zero();
  Poly power = eps;
  for (int k = 1; k < D; ++k) {
    // -log(1 + eps) = sum_k (-1)^k eps^k / k
    Rational s = Rational(k % 2 ? -1 : 1, k);
    for (int i = 0; i < D; ++i)
      for (int j = 0; i + j < D; ++j) result[i][j] += s * power[i][j];
    power = mul(power, eps);
  }
  return result;
}

std::shared_ptr<Voa> make_heisenberg(int T, int max_weight) {
  if (max_weight < 0) throw SchemaError("window must be nonnegative");
  auto F = build_space(T, false, FracExp::integer(max_weight, T), "h");
  GradedBasis B = basis_of(*F);
  Vec omega;
  if (max_weight >= 2) {
    State st(F->slot_value.size(), 0);
    st[0] = 2;  // h(-1)^(2) = (1/2) h(-1)^2 vac
    omega = Vec::unit(F->index.at(st));
  }
  auto V = std::make_shared<HeisenbergVoa>(F, B, 0, omega);
  if (T % 2 == 0) {
    Automorphism theta{"theta", T, {}};
    for (const auto& st : F->states) {
      int parts = 0;
      for (int c : st) parts += c;
      theta.eigen.push_back(parts % 2 ? T / 2 : 0);
    }
    V->add_automorphism(theta);
  }
  V->set_adjoint(std::make_unique<FockModule>(V.get(), F, FockKind::untwisted, Rational(0), "heisenberg"));
  return V;
}

std::shared_ptr<Module> make_fock_module(std::shared_ptr<const Voa> V, FockKind kind, const Rational& momentum, const FracExp& max_degree) {
  auto H = std::dynamic_pointer_cast<const HeisenbergVoa>(V);
  if (!H) throw SchemaError("Fock modules require the built-in Heisenberg VOA");
  const int T = V->T();
  std::string name;
  std::shared_ptr<FockSpace> F;
  if (kind == FockKind::theta_twisted) {
    F = build_space(T, true, max_degree, "t");
    name = "heisenberg_theta_twisted";
  } else {
    F = build_space(T, false, max_degree, "h");
    name = momentum == 0 ? std::string("heisenberg_fock") : "heisenberg_fock[" + format_rational(momentum) + "]";
  }
  struct Holder : FockModule {
    Holder(std::shared_ptr<const HeisenbergVoa> keep, std::shared_ptr<const FockSpace> F, FockKind k, Rational m, std::string n)
        : FockModule(keep.get(), std::move(F), k, m, std::move(n)), keep_(std::move(keep)) {}
    std::shared_ptr<const HeisenbergVoa> keep_;
  };
  return std::make_shared<Holder>(H, F, kind, momentum, name);
}

}  // namespace twzhu
