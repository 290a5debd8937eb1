#pragma once

#include <climits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtl/lincomb.hpp"
#include "qtl/matrix.hpp"
#include "qtl/torus.hpp"

namespace qtl {

/// Basis symbols of G~:
///
///   XD(p, j) = x^p d_{e_j}   p in N^d, |p| >= 1, 0-based j
///   XT(l, w) = x^l tbar^w    l in N^d, w in Gamma_0
struct GKey {
  enum class Kind { XD, XT };
  Kind kind = Kind::XD;
  ExpVec power;
  int index = 0;  // XD only
  ExpVec cls;     // XT only

  static GKey xd(ExpVec p, int j) { return {Kind::XD, std::move(p), j, ExpVec()}; }
  static GKey xt(ExpVec l, ExpVec w) { return {Kind::XT, std::move(l), 0, std::move(w)}; }

  /// |p| - 1 for XD, |l| for XT.
  int degree() const;

  friend auto operator<=>(const GKey&, const GKey&) = default;
  friend bool operator==(const GKey&, const GKey&) = default;
};

using GTildeElement = LinComb<GKey>;

/// e^c / c! = prod_i e_i^{c_i} / c_i!, the Taylor coefficient of exp(e|x) at x^c.
Rational exp_coefficient(const ExpVec& e, const ExpVec& c);

std::string to_string(const GKey& k);
std::string to_string(const GTildeElement& a);

/// Throws MalformedBasisKey unless the key is well formed for `spec`.
void validate_key(const TorusSpec& spec, const GKey& k);

/// The bracket of two basis symbols, dropping every term of filtration degree
/// above `max_degree`. Inputs are not validated.
///
///   [x^m d_a, x^n d_b]   = n_a x^{m+n-e_a} d_b - m_b x^{m+n-e_b} d_a
///   [x^m d_a, x^l t^s]   = l_a x^{m+l-e_a} t^s + s_a x^{m+l} t^s
///   [x^p t^r, x^l t^s]   = (sigma(r,s) - sigma(s,r)) sum_c e^c/c! x^{p+l+c} t^v
///
/// where v = canonical_rep(r+s) and e = r+s-v lies in R. The last sum comes
/// from t^e = exp(e|x) in the carrier algebra and is finite only after
/// truncation, which is why the degree cap is part of the signature.
GTildeElement bracket_G_keys(const TorusSpec& spec, const GKey& a, const GKey& b, int max_degree);

/// Bilinear extension of bracket_G_keys. Throws MalformedBasisKey.
GTildeElement bracket_G(const TorusSpec& spec, const GTildeElement& a, const GTildeElement& b, int max_degree);

/// Common Gamma-class of all terms (XD terms have the class of 0, i.e.
/// spec.central_class()), or nullopt when the element is mixed. The zero
/// element reports the zero class.
std::optional<ExpVec> gamma_degree(const TorusSpec& spec, const GTildeElement& a);

/// Minimum filtration degree over the terms; INT_MAX for the zero element.
int filtration_degree(const GTildeElement& a);

/// All basis symbols of filtration degree exactly n, XD first, then XT, each
/// in key order.
std::vector<GKey> gtilde_basis(const TorusSpec& spec, int n);
/// The XD symbols of filtration degree n (the G~^x part).
std::vector<GKey> gtilde_x_basis(const TorusSpec& spec, int n);

/// Image in gl_d (+) gl_N: XD(e_i, j) -> E_ij, XT(0, w) -> X^w, rest -> 0.
std::pair<ExactMatrix, ExactMatrix> project_quotient(const TorusSpec& spec, const GTildeElement& a);

struct CommutatorSpanLevel {
  int degree = 0;
  std::size_t span_dim = 0;
  std::size_t full_dim = 0;
};

/// For each degree n <= max_degree, the dimension of the span of
/// [G~^x_i, G~^x_j] with i + j = n inside G~^x_n, against dim G~^x_n.
std::vector<CommutatorSpanLevel> commutator_span_report(const TorusSpec& spec, int max_degree);

}  // namespace qtl
