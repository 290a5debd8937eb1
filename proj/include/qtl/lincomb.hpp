#pragma once

#include <map>
#include <string>

#include "qtl/cyclo.hpp"

namespace qtl {

/// Finite linear combination of ordered basis keys with cyclotomic
/// coefficients. Zero coefficients are never stored, so equality of values
/// is equality of maps.
template <class Key>
class LinComb {
 public:
  using Map = std::map<Key, CycloNum>;

  LinComb() = default;
  LinComb(const Key& k, CycloNum c = CycloNum(1)) { add(k, c); }

  void add(const Key& k, const CycloNum& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(k, c);
    if (inserted) return;
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  void add(const LinComb& o, const CycloNum& s = CycloNum(1)) {
    if (s.is_zero()) return;
    for (const auto& [k, c] : o.terms_) add(k, s * c);
  }

  const Map& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  CycloNum coeff(const Key& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? CycloNum(0) : it->second;
  }

  LinComb& operator+=(const LinComb& o) {
    add(o);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add(o, CycloNum(-1));
    return *this;
  }
  friend LinComb operator+(LinComb a, const LinComb& b) { return a += b; }
  friend LinComb operator-(LinComb a, const LinComb& b) { return a -= b; }
  friend LinComb operator*(const CycloNum& s, const LinComb& a) {
    LinComb out;
    out.add(a, s);
    return out;
  }
  LinComb operator-() const { return CycloNum(-1) * *this; }
  friend bool operator==(const LinComb&, const LinComb&) = default;

  /// "c1*K1 - c2*K2", keys rendered by `key_to_string`. Rational scalars are
  /// written p/q, others as CycloNum text; the output parses back.
  template <class KeyFmt>
  std::string to_string(KeyFmt&& key_to_string) const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto& [k, c] : terms_) {
      CycloNum a = c;
      const bool neg = c.is_rational() && sgn(c.rational_part()) < 0;
      if (neg) a = -c;
      s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
      if (!a.is_one()) s += (a.is_rational() ? short_rational(a.rational_part()) : a.to_string()) + "*";
      s += key_to_string(k);
    }
    return s;
  }

 private:
  static std::string short_rational(const Rational& r) {
    return r.get_den() == 1 ? r.get_num().get_str() : rational_to_string(r);
  }

  Map terms_;
};

}  // namespace qtl
