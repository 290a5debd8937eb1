#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qtl {

using Rational = mpq_class;

/// The cyclotomic field Q(zeta_L), realized as Q[x] / Phi_L(x).
///
/// Fields are interned: `CycloField::get(L)` always returns the same object,
/// which lives until process exit, so elements can hold a plain pointer.
class CycloField {
 public:
  static const CycloField& get(int order);

  int order() const { return order_; }
  /// phi(L), the dimension of the field over Q.
  int degree() const { return degree_; }
  /// Integer coefficients of Phi_L, constant term first.
  const std::vector<long long>& cyclotomic_polynomial() const { return phi_; }
  /// Nonzero coefficients of x^k mod Phi_L, as (index, value) pairs.
  const std::vector<std::pair<int, mpz_class>>& reduced_power(std::size_t k) const {
    return powers_[k];
  }
  std::size_t reduced_power_count() const { return powers_.size(); }

  CycloField(const CycloField&) = delete;
  CycloField& operator=(const CycloField&) = delete;

 private:
  explicit CycloField(int order);

  int order_;
  int degree_;
  std::vector<long long> phi_;
  std::vector<std::vector<std::pair<int, mpz_class>>> powers_;
};

/// Euler totient.
int euler_phi(int n);

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<long long> cyclotomic_polynomial(int n);

/// An exact element of Q(zeta_L) in the power basis 1, zeta, ..., zeta^{phi-1}.
///
/// The coefficient vector always has length phi(L) and is fully reduced, so
/// two values are equal iff their coefficient vectors are equal. Elements of a
/// degree-one field (L = 1, 2) are plain rationals and mix freely with any field.
class CycloNum {
 public:
  CycloNum();
  CycloNum(long v);  // NOLINT(google-explicit-constructor)
  CycloNum(const Rational& v);  // NOLINT(google-explicit-constructor)
  CycloNum(const CycloField& field, const Rational& v);
  /// Reduces `coeffs` (any length) modulo Phi_L.
  CycloNum(const CycloField& field, std::vector<Rational> coeffs);

  /// zeta_L^j, with j taken mod L.
  static CycloNum root_of_unity(const CycloField& field, long long j);

  const CycloField& field() const { return *field_; }
  std::span<const Rational> coeffs() const { return c_; }

  bool is_zero() const;
  bool is_one() const;
  /// True when the value lies in Q.
  bool is_rational() const;
  /// The rational value; only meaningful when is_rational().
  const Rational& rational_part() const { return c_[0]; }

  CycloNum operator-() const;
  CycloNum& operator+=(const CycloNum& o);
  CycloNum& operator-=(const CycloNum& o);
  CycloNum& operator*=(const CycloNum& o);
  CycloNum& operator/=(const CycloNum& o);

  friend CycloNum operator+(CycloNum a, const CycloNum& b) { return a += b; }
  friend CycloNum operator-(CycloNum a, const CycloNum& b) { return a -= b; }
  friend CycloNum operator*(const CycloNum& a, const CycloNum& b);
  friend CycloNum operator/(CycloNum a, const CycloNum& b) { return a /= b; }
  friend bool operator==(const CycloNum& a, const CycloNum& b);

  /// Multiplicative inverse; throws DivisionByZero on zero.
  CycloNum inverse() const;
  CycloNum pow(long long e) const;

  /// Floating approximation, for diagnostics only.
  std::complex<double> to_complex() const;

  /// `L:[c0,c1,...]` with every coefficient written as `p/q`.
  std::string to_string() const;
  /// Parses `L:[...]`, or a bare rational `p` / `p/q` (taken in Q).
  static CycloNum parse(std::string_view text);

 private:
  // Brings `o` into this element's field, or throws FieldMismatch.
  const CycloField& common_field(const CycloNum& o) const;
  std::vector<Rational> coeffs_in(const CycloField& f) const;

  const CycloField* field_;
  std::vector<Rational> c_;
};

std::ostream& operator<<(std::ostream& os, const CycloNum& x);

/// Rational to `p/q` (denominator always written).
std::string rational_to_string(const Rational& r);
/// Accepts `p` or `p/q`; throws ParseError.
Rational parse_rational(std::string_view text);

}  // namespace qtl
