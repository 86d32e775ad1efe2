#pragma once

#include <map>
#include <utility>

#include "hallbridge/scalar.hpp"

namespace hallbridge {

/// A finite formal sum of basis keys with Scalar coefficients. Zero
/// coefficients are never stored, so equality is plain map equality.
template <class Key>
class Combination {
 public:
  using Map = std::map<Key, Scalar>;

  Combination() = default;
  Combination(const Key& k, Scalar c = Scalar(1)) { add(k, std::move(c)); }

  void add(const Key& k, const Scalar& c) {
    if (c.is_zero()) return;
    auto [it, fresh] = terms_.emplace(k, c);
    if (fresh) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }

  Combination& operator+=(const Combination& o) {
    for (const auto& [k, c] : o.terms_) add(k, c);
    return *this;
  }
  Combination& operator-=(const Combination& o) {
    for (const auto& [k, c] : o.terms_) add(k, -c);
    return *this;
  }
  Combination& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }

  friend Combination operator+(Combination x, const Combination& y) { return x += y; }
  friend Combination operator-(Combination x, const Combination& y) { return x -= y; }
  friend Combination operator*(const Scalar& s, Combination x) { return x *= s; }

  Scalar coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Scalar(0) : it->second;
  }

  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  friend bool operator==(const Combination& x, const Combination& y) { return x.terms_ == y.terms_; }

 private:
  Map terms_;
};

}  // namespace hallbridge
