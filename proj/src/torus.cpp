#include "qtl/torus.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "qtl/errors.hpp"

namespace qtl {

std::vector<ExpVec> box_points(std::size_t d, std::int64_t lo, std::int64_t hi) {
  std::vector<ExpVec> out;
  if (hi < lo) return out;
  ExpVec cur(d);
  for (std::size_t i = 0; i < d; ++i) cur[i] = lo;
  while (true) {
    out.push_back(cur);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (cur[i] < hi) {
        ++cur[i];
        break;
      }
      cur[i] = lo;
      if (i == 0) return out;
    }
    if (d == 0) return out;
  }
}

std::vector<ExpVec> compositions(std::size_t d, std::int64_t total) {
  std::vector<ExpVec> out;
  if (total < 0 || d == 0) return out;
  ExpVec cur(d);
  // Recursive fill, first coordinate largest first for lexicographic descent;
  // we collect then sort to get ascending lexicographic order.
  auto rec = [&](auto&& self, std::size_t i, std::int64_t left) -> void {
    if (i + 1 == d) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (std::int64_t v = 0; v <= left; ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

TorusSpec::TorusSpec(int rank, std::vector<int> orders, int field_order) : d_(rank), k_(std::move(orders)) {
  if (d_ < 2) throw InvalidSpec("rank d must be at least 2");
  if (2 * static_cast<int>(k_.size()) > d_) throw InvalidSpec("need 2z <= d");
  for (std::size_t i = 0; i < k_.size(); ++i) {
    if (k_[i] < 1) throw InvalidSpec("orders k_i must be positive");
    if (i > 0 && k_[i - 1] % k_[i] != 0) throw InvalidSpec("need k_{i+1} | k_i");
  }
  const int k1 = k_.empty() ? 1 : k_[0];
  if (field_order == 0) field_order = k1;
  if (field_order < 1 || field_order % k1 != 0) throw InvalidSpec("field order L must be a multiple of k_1");
  field_ = &CycloField::get(field_order);

  n_ = 1;
  for (int k : k_) n_ *= k;
  b_.assign(d_, 1);
  for (std::size_t i = 0; i < k_.size(); ++i) {
    b_[2 * i] = k_[i];
    b_[2 * i + 1] = k_[i];
  }
  roots_.reserve(field_order);
  for (int j = 0; j < field_order; ++j) roots_.push_back(CycloNum::root_of_unity(*field_, j));

  // Gamma_0: paired coordinates in 1..k_i, the rest zero, lexicographic.
  std::vector<ExpVec> reps{zero()};
  for (std::size_t i = 0; i < k_.size(); ++i) {
    for (std::size_t slot : {2 * i, 2 * i + 1}) {
      std::vector<ExpVec> next;
      for (const auto& r : reps)
        for (int v = 1; v <= k_[i]; ++v) {
          ExpVec w = r;
          w[slot] = v;
          next.push_back(std::move(w));
        }
      reps = std::move(next);
    }
  }
  std::sort(reps.begin(), reps.end());
  gamma0_ = std::move(reps);
  central_class_ = zero();
  for (std::size_t i = 0; i < k_.size(); ++i) {
    central_class_[2 * i] = k_[i];
    central_class_[2 * i + 1] = k_[i];
  }
}

CycloNum TorusSpec::q(int pair) const { return root(field_->order() / k_.at(pair)); }

const CycloNum& TorusSpec::root(long long j) const {
  const long long l = field_->order();
  long long r = j % l;
  if (r < 0) r += l;
  return roots_[static_cast<std::size_t>(r)];
}

std::size_t TorusSpec::gamma0_index(const ExpVec& w) const {
  auto it = std::lower_bound(gamma0_.begin(), gamma0_.end(), w);
  if (it == gamma0_.end() || *it != w) throw MalformedBasisKey(w.to_string() + " is not in Gamma_0");
  return static_cast<std::size_t>(it - gamma0_.begin());
}

long long sigma_exponent(const TorusSpec& spec, const ExpVec& m, const ExpVec& n) {
  const long long l = spec.field_order();
  long long e = 0;
  for (int i = 0; i < spec.pairs(); ++i) {
    const long long step = l / spec.orders()[i];
    const long long prod = (m[2 * i + 1] % l) * (n[2 * i] % l) % l;
    e = (e + step * prod) % l;
  }
  if (e < 0) e += l;
  return e;
}

CycloNum sigma_hat(const TorusSpec& spec, const ExpVec& m, const ExpVec& n) {
  return spec.root(sigma_exponent(spec, m, n));
}

CycloNum sigma_commutator(const TorusSpec& spec, const ExpVec& m, const ExpVec& n) {
  const long long a = sigma_exponent(spec, m, n);
  const long long b = sigma_exponent(spec, n, m);
  if (a == b) return CycloNum(spec.field(), Rational(0));
  return spec.root(a) - spec.root(b);
}

bool in_R(const TorusSpec& spec, const ExpVec& m) {
  for (int i = 0; i < spec.pairs(); ++i) {
    const int k = spec.orders()[i];
    if (m[2 * i] % k != 0 || m[2 * i + 1] % k != 0) return false;
  }
  return true;
}

ExpVec canonical_rep(const TorusSpec& spec, const ExpVec& m) {
  ExpVec w = spec.zero();
  for (int i = 0; i < spec.pairs(); ++i) {
    const std::int64_t k = spec.orders()[i];
    for (std::size_t slot : {2 * static_cast<std::size_t>(i), 2 * static_cast<std::size_t>(i) + 1}) {
      std::int64_t r = (m[slot] - 1) % k;
      if (r < 0) r += k;
      w[slot] = r + 1;
    }
  }
  return w;
}

Decomposition decompose(const TorusSpec& spec, const ExpVec& m) {
  ExpVec w = canonical_rep(spec, m);
  ExpVec n = m - w;
  return {std::move(n), std::move(w)};
}

Monomial multiply_monomials(const TorusSpec& spec, const Monomial& a, const Monomial& b) {
  return {a.coeff * b.coeff * sigma_hat(spec, a.exp, b.exp), a.exp + b.exp};
}

bool matches_normal_form(const TorusSpec& spec, const std::vector<std::vector<CycloNum>>& q) {
  const auto d = static_cast<std::size_t>(spec.rank());
  if (q.size() != d) return false;
  const CycloNum one(1);
  for (std::size_t i = 0; i < d; ++i) {
    if (q[i].size() != d) return false;
    for (std::size_t j = 0; j < d; ++j) {
      CycloNum expected = one;
      const std::size_t pi = i / 2, pj = j / 2;
      if (pi == pj && pi < static_cast<std::size_t>(spec.pairs()) && i != j) {
        const CycloNum qi = spec.q(static_cast<int>(pi));
        expected = (i % 2 == 1) ? qi : qi.inverse();
      }
      if (!(q[i][j] == expected)) return false;
    }
  }
  return true;
}

}  // namespace qtl
