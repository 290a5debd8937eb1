#pragma once

#include <vector>

#include "qtl/cyclo.hpp"
#include "qtl/expvec.hpp"

namespace qtl {

/// A rational quantum torus in normal form.
///
/// The commutation matrix is determined by the rank d and the orders
/// k_1, ..., k_z (k_{i+1} | k_i): t_{2i} t_{2i-1} = q_i t_{2i-1} t_{2i} with
/// q_i = zeta_L^{L/k_i}, every other pair of generators commuting.
class TorusSpec {
 public:
  /// `field_order` 0 means "use k_1" (or 1 for a commutative torus).
  TorusSpec(int rank, std::vector<int> orders, int field_order = 0);

  int rank() const { return d_; }
  int pairs() const { return static_cast<int>(k_.size()); }
  const std::vector<int>& orders() const { return k_; }
  int field_order() const { return field_->order(); }
  const CycloField& field() const { return *field_; }
  /// N = k_1 ... k_z.
  long long matrix_size() const { return n_; }
  /// |Gamma| = N^2.
  long long gamma_order() const { return n_ * n_; }
  /// Diagonal of B = diag(k_1, k_1, ..., k_z, k_z, 1, ..., 1).
  std::int64_t b_entry(std::size_t i) const { return b_[i]; }
  const std::vector<std::int64_t>& b_diagonal() const { return b_; }

  /// q_i for the 0-based pair index i.
  CycloNum q(int pair) const;
  /// zeta_L^j from a cached table.
  const CycloNum& root(long long j) const;

  /// Gamma_0 in lexicographic order.
  const std::vector<ExpVec>& gamma0() const { return gamma0_; }
  /// The unique element of Gamma_0 lying in R.
  const ExpVec& central_class() const { return central_class_; }
  /// Position of a Gamma_0 element in gamma0().
  std::size_t gamma0_index(const ExpVec& w) const;

  ExpVec zero() const { return ExpVec(static_cast<std::size_t>(d_)); }

  friend bool operator==(const TorusSpec& a, const TorusSpec& b) {
    return a.d_ == b.d_ && a.k_ == b.k_ && a.field_ == b.field_;
  }

 private:
  int d_;
  std::vector<int> k_;
  const CycloField* field_;
  long long n_;
  std::vector<std::int64_t> b_;
  std::vector<CycloNum> roots_;
  std::vector<ExpVec> gamma0_;
  ExpVec central_class_;
};

/// Exponent e with sigma_hat(m, n) = zeta_L^e, reduced into [0, L).
long long sigma_exponent(const TorusSpec& spec, const ExpVec& m, const ExpVec& n);

/// The oracle-fixed pairing: t^m t^n = sigma_hat(m, n) t^{m+n}, with
/// sigma_hat(m, n) = prod_i q_i^{m_{2i} n_{2i-1}}.
CycloNum sigma_hat(const TorusSpec& spec, const ExpVec& m, const ExpVec& n);

/// sigma_hat(m, n) - sigma_hat(n, m), the commutator coefficient.
CycloNum sigma_commutator(const TorusSpec& spec, const ExpVec& m, const ExpVec& n);

/// True iff m lies in the radical subgroup R.
bool in_R(const TorusSpec& spec, const ExpVec& m);

/// The representative of m + R in Gamma_0 (paired coordinates in (0, k_i]).
ExpVec canonical_rep(const TorusSpec& spec, const ExpVec& m);

struct Decomposition {
  ExpVec central;  // in R
  ExpVec rep;      // in Gamma_0
};

/// m = central + rep.
Decomposition decompose(const TorusSpec& spec, const ExpVec& m);

struct Monomial {
  CycloNum coeff;
  ExpVec exp;
  friend bool operator==(const Monomial&, const Monomial&) = default;
};

Monomial multiply_monomials(const TorusSpec& spec, const Monomial& a, const Monomial& b);

/// Checks a raw d x d matrix of roots of unity against the normal-form pattern of `spec`.
bool matches_normal_form(const TorusSpec& spec, const std::vector<std::vector<CycloNum>>& q);

}  // namespace qtl
