#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qtl/lincomb.hpp"
#include "qtl/torus.hpp"

namespace qtl {

/// Basis symbols of D = Der(C_Q), extended by the center Z for D x Z modules.
///
///   Deriv(i, m) = t^m d_i   (m in R, 0-based i)
///   Inner(s)    = ad t^s    (s not in R)
///   Central(n)  = t^n       (n in R, the associative Z action)
struct DKey {
  enum class Kind { Deriv, Inner, Central };
  Kind kind = Kind::Deriv;
  int index = 0;  // only meaningful for Deriv
  ExpVec exp;

  static DKey deriv(int i, ExpVec m) { return {Kind::Deriv, i, std::move(m)}; }
  static DKey inner(ExpVec s) { return {Kind::Inner, 0, std::move(s)}; }
  static DKey central(ExpVec n) { return {Kind::Central, 0, std::move(n)}; }

  friend auto operator<=>(const DKey&, const DKey&) = default;
  friend bool operator==(const DKey&, const DKey&) = default;
};

using DElement = LinComb<DKey>;

/// Witt(i, m) = x^m x_i d/dx_i in W_d.
struct WKey {
  int index = 0;
  ExpVec exp;
  friend auto operator<=>(const WKey&, const WKey&) = default;
  friend bool operator==(const WKey&, const WKey&) = default;
};

using WdElement = LinComb<WKey>;

std::string to_string(const DKey& k);
std::string to_string(const WKey& k);
std::string to_string(const DElement& a);
std::string to_string(const WdElement& a);

/// d(u, m) = sum_i u_i t^m d_i.
DElement d_partial(const std::vector<CycloNum>& u, const ExpVec& m);

/// Throws MalformedBasisKey unless the key is well formed for `spec`.
void validate_key(const TorusSpec& spec, const DKey& k);

DElement bracket_D(const TorusSpec& spec, const DElement& a, const DElement& b);
WdElement bracket_Wd(const WdElement& a, const WdElement& b);

/// d(u, m) -> x^n sum_i u_i B_ii x_i d_i with m = B n. Throws ExponentNotInR.
WdElement dR_to_Wd(const TorusSpec& spec, const DElement& a);

/// True iff the entries are linearly independent over Q.
bool is_generic(const std::vector<CycloNum>& mu);

struct SolenoidalSpec {
  enum class Flavor { Commutative, Quantum };
  std::vector<CycloNum> mu;
  Flavor flavor = Flavor::Quantum;
};

struct SpanReport {
  bool closed = true;
  std::size_t pairs_checked = 0;
  std::optional<std::string> counterexample;
};

/// Brackets every pair of spanning elements with exponents in the box
/// [-box, box]^d and checks the result stays in the span. W_mu spans
/// x^m sum mu_i x_i d_i; g_mu spans d(mu, m) (m in R) and ad t^s (s not in R).
/// Throws NotGeneric.
SpanReport solenoidal_span_check(const TorusSpec& spec, const SolenoidalSpec& sol, int box);

}  // namespace qtl
