#pragma once

#include <map>
#include <string>

#include "twzhu/scalars.hpp"

namespace twzhu {

/// Sparse vector over a basis indexed by int. Zero entries are never stored.
class Vec {
 public:
  using Map = std::map<int, Scalar>;

  Vec() = default;
  static Vec unit(int i, const Scalar& c = Scalar(1)) {
    Vec v;
    v.add(i, c);
    return v;
  }

  void add(int i, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = m_.find(i);
    if (it == m_.end()) {
      m_.emplace(i, c);
      return;
    }
    it->second += c;
    if (it->second.is_zero()) m_.erase(it);
  }

  /// this += c * o
  void axpy(const Scalar& c, const Vec& o) {
    if (c.is_zero()) return;
    for (const auto& [i, x] : o.m_) add(i, c * x);
  }

  Vec& operator+=(const Vec& o) {
    for (const auto& [i, x] : o.m_) add(i, x);
    return *this;
  }
  Vec& operator-=(const Vec& o) {
    for (const auto& [i, x] : o.m_) add(i, -x);
    return *this;
  }
  Vec operator+(const Vec& o) const {
    Vec r = *this;
    r += o;
    return r;
  }
  Vec operator-(const Vec& o) const {
    Vec r = *this;
    r -= o;
    return r;
  }
  Vec scaled(const Scalar& c) const {
    Vec r;
    if (c.is_zero()) return r;
    for (const auto& [i, x] : m_) r.m_.emplace(i, x * c);
    return r;
  }

  Scalar at(int i) const {
    auto it = m_.find(i);
    return it == m_.end() ? Scalar() : it->second;
  }
  bool empty() const { return m_.empty(); }
  std::size_t size() const { return m_.size(); }
  Map::const_iterator begin() const { return m_.begin(); }
  Map::const_iterator end() const { return m_.end(); }
  const Map& map() const { return m_; }

  bool operator==(const Vec& o) const { return m_ == o.m_; }
  bool operator!=(const Vec& o) const { return !(*this == o); }

 private:
  Map m_;
};

inline bool is_zero(const Scalar& s) { return s.is_zero(); }
inline bool is_zero(const Vec& v) { return v.empty(); }
inline Scalar scale(const Scalar& c, const Scalar& x) { return c * x; }
inline Vec scale(const Scalar& c, const Vec& x) { return x.scaled(c); }

}  // namespace twzhu
