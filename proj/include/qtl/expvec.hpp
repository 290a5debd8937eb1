#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace qtl {

/// An integer exponent vector in Z^d.
class ExpVec {
 public:
  ExpVec() = default;
  explicit ExpVec(std::size_t d) : e_(d, 0) {}
  ExpVec(std::initializer_list<std::int64_t> values) : e_(values) {}
  explicit ExpVec(std::vector<std::int64_t> values) : e_(std::move(values)) {}

  static ExpVec unit(std::size_t d, std::size_t i) {
    ExpVec v(d);
    v.e_[i] = 1;
    return v;
  }

  std::size_t size() const { return e_.size(); }
  std::int64_t operator[](std::size_t i) const { return e_[i]; }
  std::int64_t& operator[](std::size_t i) { return e_[i]; }
  auto begin() const { return e_.begin(); }
  auto end() const { return e_.end(); }
  const std::vector<std::int64_t>& values() const { return e_; }

  /// Sum of the entries, |m|.
  std::int64_t total() const {
    std::int64_t s = 0;
    for (auto x : e_) s += x;
    return s;
  }
  bool is_zero() const {
    for (auto x : e_)
      if (x != 0) return false;
    return true;
  }
  bool is_nonnegative() const {
    for (auto x : e_)
      if (x < 0) return false;
    return true;
  }

  ExpVec& operator+=(const ExpVec& o) {
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] += o.e_[i];
    return *this;
  }
  ExpVec& operator-=(const ExpVec& o) {
    for (std::size_t i = 0; i < e_.size(); ++i) e_[i] -= o.e_[i];
    return *this;
  }
  friend ExpVec operator+(ExpVec a, const ExpVec& b) { return a += b; }
  friend ExpVec operator-(ExpVec a, const ExpVec& b) { return a -= b; }
  ExpVec operator-() const {
    ExpVec out = *this;
    for (auto& x : out.e_) x = -x;
    return out;
  }
  friend ExpVec operator*(std::int64_t s, ExpVec v) {
    for (auto& x : v.e_) x *= s;
    return v;
  }

  friend auto operator<=>(const ExpVec&, const ExpVec&) = default;
  friend bool operator==(const ExpVec&, const ExpVec&) = default;

  /// "(1,-2,0)"
  std::string to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < e_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(e_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<std::int64_t> e_;
};

/// All vectors of length d with entries in [lo, hi], in lexicographic order.
std::vector<ExpVec> box_points(std::size_t d, std::int64_t lo, std::int64_t hi);

/// All p in N^d with |p| == total, in lexicographic order.
std::vector<ExpVec> compositions(std::size_t d, std::int64_t total);

}  // namespace qtl
