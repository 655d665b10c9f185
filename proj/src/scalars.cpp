#include "twzhu/scalars.hpp"

#include <array>
#include <memory>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>

namespace twzhu {

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw SchemaError("empty rational");
  auto slash = s.find('/');
  auto digits_ok = [](const std::string& t) {
    if (t.empty()) return false;
    std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  std::string p = s.substr(0, slash);
  std::string q = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!digits_ok(p) || !digits_ok(q)) throw SchemaError("malformed rational '" + s + "'");
  if (p[0] == '+') p = p.substr(1);
  if (q[0] == '+') q = q.substr(1);
  Integer num(p), den(q);
  if (den == 0) throw SchemaError("zero denominator in '" + s + "'");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

std::string format_rational(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational gen_binomial(const Rational& alpha, unsigned j) {
  Rational num(1);
  Rational fact(1);
  for (unsigned i = 0; i < j; ++i) {
    num *= alpha - i;
    fact *= i + 1;
  }
  return num / fact;
}

// ---------------------------------------------------------------- FracExp

FracExp::FracExp(std::int64_t num, int T) : num_(num), T_(T) {
  if (T <= 0) throw ContextMismatch("FracExp denominator must be positive");
}

FracExp FracExp::from_rational(const Rational& r, int T) {
  Rational s = r * T;
  if (s.get_den() != 1) throw ContextMismatch(format_rational(r) + " is not in (1/" + std::to_string(T) + ")Z");
  return FracExp(s.get_num().get_si(), T);
}

std::int64_t FracExp::floor() const {
  std::int64_t q = num_ / T_;
  if (num_ % T_ != 0 && num_ < 0) --q;
  return q;
}

int FracExp::tilde() const {
  std::int64_t r = num_ % T_;
  if (r < 0) r += T_;
  return static_cast<int>(r);
}

std::string FracExp::str() const { return std::to_string(num_) + "/" + std::to_string(T_); }

void FracExp::check(const FracExp& o) const {
  if (T_ != o.T_)
    throw ContextMismatch("mixing exponents over T=" + std::to_string(T_) + " and T=" + std::to_string(o.T_));
}

FracExp FracExp::operator+(const FracExp& o) const {
  check(o);
  return FracExp(num_ + o.num_, T_);
}

FracExp FracExp::operator-(const FracExp& o) const {
  check(o);
  return FracExp(num_ - o.num_, T_);
}

bool FracExp::operator==(const FracExp& o) const {
  check(o);
  return num_ == o.num_;
}

std::strong_ordering FracExp::operator<=>(const FracExp& o) const {
  check(o);
  return num_ <=> o.num_;
}

std::ostream& operator<<(std::ostream& os, const FracExp& e) { return os << e.str(); }

// ---------------------------------------------------------------- cyclotomic tables

namespace {

using IPoly = std::vector<Integer>;

// exact division by a monic polynomial
IPoly poly_div_monic(IPoly a, const IPoly& b) {
  std::size_t db = b.size() - 1;
  IPoly q(a.size() - db, Integer(0));
  for (std::size_t k = a.size(); k-- > db;) {
    Integer c = a[k];
    q[k - db] = c;
    for (std::size_t i = 0; i <= db; ++i) a[k - db + i] -= c * b[i];
  }
  return q;
}

struct Field {
  int N = 1;
  int phi = 1;
  IPoly poly;
  std::vector<std::vector<Rational>> xpow;  // x^k reduced, k in [0, max(N, 2 phi - 1))
};

constexpr int kMaxModulus = 512;

std::mutex g_field_mutex;
std::array<std::unique_ptr<Field>, kMaxModulus + 1> g_fields;

const Field& field(int N) {
  if (N < 1 || N > kMaxModulus) throw ModulusMismatch("unsupported cyclotomic modulus " + std::to_string(N));
  std::lock_guard<std::mutex> lock(g_field_mutex);
  if (g_fields[N]) return *g_fields[N];
  auto f = std::make_unique<Field>();
  f->N = N;
  f->phi = euler_phi(N);
  f->poly = cyclotomic_poly(N);
  int count = std::max(N, 2 * f->phi - 1);
  f->xpow.resize(count);
  for (int k = 0; k < count; ++k) {
    std::vector<Rational> v(f->phi, Rational(0));
    if (k < f->phi) {
      v[k] = 1;
    } else {
      // x^k = x * x^{k-1}; x^phi = -sum poly[i] x^i
      const auto& prev = f->xpow[k - 1];
      Rational top = prev[f->phi - 1];
      for (int i = f->phi - 1; i >= 1; --i) v[i] = prev[i - 1];
      v[0] = 0;
      for (int i = 0; i < f->phi; ++i) v[i] -= top * Rational(f->poly[i]);
    }
    f->xpow[k] = std::move(v);
  }
  g_fields[N] = std::move(f);
  return *g_fields[N];
}

}  // namespace

int euler_phi(int N) {
  int r = N;
  int n = N;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      r -= r / p;
    }
  }
  if (n > 1) r -= r / n;
  return r;
}

const std::vector<Integer>& cyclotomic_poly(int N) {
  static std::mutex m;
  static std::vector<std::unique_ptr<IPoly>> cache(kMaxModulus + 1);
  if (N < 1 || N > kMaxModulus) throw ModulusMismatch("unsupported cyclotomic modulus " + std::to_string(N));
  {
    std::lock_guard<std::mutex> lock(m);
    if (cache[N]) return *cache[N];
  }
  IPoly num(N + 1, Integer(0));
  num[0] = -1;
  num[N] = 1;
  for (int d = 1; d < N; ++d)
    if (N % d == 0) num = poly_div_monic(num, cyclotomic_poly(d));
  std::lock_guard<std::mutex> lock(m);
  if (!cache[N]) cache[N] = std::make_unique<IPoly>(std::move(num));
  return *cache[N];
}

// ---------------------------------------------------------------- CycloScalar

CycloScalar::CycloScalar(int N, std::vector<Rational> coeffs) {
  const Field& f = field(N);
  std::vector<Rational> c(f.phi, Rational(0));
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    if (static_cast<int>(k) < f.phi) {
      c[k] += coeffs[k];
    } else {
      // reduce x^k using x^N = 1 first
      const auto& red = f.xpow[k % N];
      for (int i = 0; i < f.phi; ++i) c[i] += coeffs[k] * red[i];
    }
  }
  N_ = N;
  c_ = std::move(c);
  normalize();
}

CycloScalar CycloScalar::root_of_unity(std::int64_t k, int N) {
  const Field& f = field(N);
  std::int64_t r = k % N;
  if (r < 0) r += N;
  CycloScalar s;
  s.N_ = N;
  s.c_ = f.xpow[r];
  s.normalize();
  return s;
}

void CycloScalar::normalize() {
  if (N_ == 1) return;
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return;
  Rational r = c_[0];
  N_ = 1;
  c_.assign(1, r);
}

const Rational& CycloScalar::rational() const {
  if (N_ != 1) throw ModulusMismatch("scalar " + str() + " is not rational");
  return c_[0];
}

CycloScalar CycloScalar::operator+(const CycloScalar& o) const {
  CycloScalar r = *this;
  r += o;
  return r;
}

CycloScalar CycloScalar::operator-(const CycloScalar& o) const {
  CycloScalar r = *this;
  r -= o;
  return r;
}

CycloScalar& CycloScalar::operator+=(const CycloScalar& o) {
  if (o.N_ == 1) {
    c_[0] += o.c_[0];
    return *this;
  }
  if (N_ == 1) {
    Rational r = c_[0];
    *this = o;
    c_[0] += r;
    normalize();
    return *this;
  }
  if (N_ != o.N_) throw ModulusMismatch("adding elements of Q(zeta_" + std::to_string(N_) + ") and Q(zeta_" + std::to_string(o.N_) + ")");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  normalize();
  return *this;
}

CycloScalar& CycloScalar::operator-=(const CycloScalar& o) { return *this += -o; }

CycloScalar CycloScalar::operator-() const {
  CycloScalar r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CycloScalar CycloScalar::operator*(const CycloScalar& o) const {
  if (N_ == 1 && o.N_ == 1) return CycloScalar(c_[0] * o.c_[0]);
  if (N_ == 1 || o.N_ == 1) {
    const CycloScalar& cyc = N_ == 1 ? o : *this;
    const Rational& s = N_ == 1 ? c_[0] : o.c_[0];
    if (s == 0) return CycloScalar();
    CycloScalar r = cyc;
    for (auto& x : r.c_) x *= s;
    return r;
  }
  if (N_ != o.N_) throw ModulusMismatch("multiplying elements of Q(zeta_" + std::to_string(N_) + ") and Q(zeta_" + std::to_string(o.N_) + ")");
  const Field& f = field(N_);
  std::vector<Rational> prod(2 * f.phi - 1, Rational(0));
  for (int i = 0; i < f.phi; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < f.phi; ++j)
      if (o.c_[j] != 0) prod[i + j] += c_[i] * o.c_[j];
  }
  std::vector<Rational> c(f.phi, Rational(0));
  for (int k = 0; k < 2 * f.phi - 1; ++k) {
    if (prod[k] == 0) continue;
    if (k < f.phi) {
      c[k] += prod[k];
    } else {
      for (int i = 0; i < f.phi; ++i) c[i] += prod[k] * f.xpow[k][i];
    }
  }
  CycloScalar r;
  r.N_ = N_;
  r.c_ = std::move(c);
  r.normalize();
  return r;
}

CycloScalar CycloScalar::inv() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (N_ == 1) return CycloScalar(1 / c_[0]);
  const Field& f = field(N_);
  const int n = f.phi;
  // columns: this * x^k; solve A y = e_0
  std::vector<std::vector<Rational>> A(n, std::vector<Rational>(n + 1, Rational(0)));
  for (int k = 0; k < n; ++k) {
    CycloScalar col = *this * root_of_unity(k, N_);
    // col may have been demoted to rational
    for (int i = 0; i < n; ++i) A[i][k] = col.N_ == 1 ? (i == 0 ? col.c_[0] : Rational(0)) : col.c_[i];
  }
  A[0][n] = 1;
  for (int c = 0, r = 0; c < n; ++c, ++r) {
    int piv = r;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) throw DivisionByZero("singular multiplication matrix");
    std::swap(A[piv], A[r]);
    Rational d = A[r][c];
    for (int j = c; j <= n; ++j) A[r][j] /= d;
    for (int i = 0; i < n; ++i) {
      if (i == r || A[i][c] == 0) continue;
      Rational m = A[i][c];
      for (int j = c; j <= n; ++j) A[i][j] -= m * A[r][j];
    }
  }
  std::vector<Rational> y(n);
  for (int i = 0; i < n; ++i) y[i] = A[i][n];
  return CycloScalar(N_, std::move(y));
}

std::string CycloScalar::str() const {
  if (N_ == 1) return format_rational(c_[0]);
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << format_rational(c_[i]) << ")";
    if (i > 0) os << "*z" << N_ << "^" << i;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycloScalar& s) { return os << s.str(); }

CycloScalar power_branch(const FracExp& alpha) {
  return CycloScalar::root_of_unity(alpha.num(), 2 * alpha.T());
}

}  // namespace twzhu
