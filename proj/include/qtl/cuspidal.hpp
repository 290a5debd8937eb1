#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qtl/liealg.hpp"
#include "qtl/parallel.hpp"
#include "qtl/repn.hpp"

namespace qtl {

/// The cuspidal Z-D module M = (+)_s U_{s bar} (x) t^s with support in
/// alpha + Z^d. A weight label s in Z^d is stored as s = w + n' with w in
/// Gamma_0 and n' in R; M_{alpha+s} is a copy of U_w.
///
/// Two realizations share this type: the functor image of a G~-module
/// (FromRepresentation) and the tensor-field module F^alpha(V, W)
/// (TensorField), which is computed from its own formulas.
class CuspidalModule {
 public:
  enum class Kind { FromRepresentation, TensorField };

  CuspidalModule(Kind kind, std::vector<CycloNum> alpha, GRepresentation rho, std::optional<GLdGLNModule> vw, int box);

  Kind kind() const { return kind_; }
  const TorusSpec& spec() const { return rho_.spec(); }
  const std::vector<CycloNum>& alpha() const { return alpha_; }
  const GRepresentation& rho() const { return rho_; }
  const GradedVectorSpace& space() const { return rho_.space(); }
  int box() const { return box_; }
  /// When false, act() throws OutOfBox for labels outside [-box, box]^d.
  void set_lazy(bool lazy) { lazy_ = lazy; }
  bool lazy() const { return lazy_; }

  /// Matrix of a basis symbol from M_{alpha+s} to M_{alpha+s+shift}, with
  /// the target label. Rows and columns use the basis of the corresponding U blocks.
  std::pair<ExpVec, ExactMatrix> act(const DKey& symbol, const ExpVec& s) const;
  /// Linear combination of basis symbols; every term must share the same shift.
  std::pair<ExpVec, ExactMatrix> act(const DElement& a, const ExpVec& s) const;

  std::size_t multiplicity(const ExpVec& s) const;

 private:
  void check_label(const ExpVec& s) const;
  ExactMatrix act_from_rep(const DKey& symbol, const ExpVec& s, std::size_t w) const;
  ExactMatrix act_tensor_field(const DKey& symbol, const ExpVec& s, std::size_t w) const;

  Kind kind_;
  std::vector<CycloNum> alpha_;
  GRepresentation rho_;
  std::optional<GLdGLNModule> vw_;
  int box_;
  bool lazy_ = true;
};

/// A vector in a single weight space, labeled by class and central shift.
struct WeightVector {
  ExpVec class_label;    // w in Gamma_0
  ExpVec central_shift;  // n' in R
  std::vector<CycloNum> coords;
};

/// Applies a basis symbol to a weight vector.
WeightVector act_D(const CuspidalModule& m, const DKey& symbol, const WeightVector& v);

/// The functor of the equivalence: U -> M. Throws InvalidRepresentation
/// unless rho passes verify_representation.
CuspidalModule build_module(const std::vector<CycloNum>& alpha, const GRepresentation& rho, int box = 3);

/// F^alpha(V, W). Throws InvalidModuleData.
CuspidalModule tensor_field_module(const TorusSpec& spec, const std::vector<CycloNum>& alpha,
                                   const GLdGLNModule& vw, int box = 3);

/// Basis symbols of D x Z with exponents in [-radius, radius]^d: Deriv(i, m)
/// and Central(m) for m in R, Inner(m) otherwise.
std::vector<DKey> symbols_in_box(const TorusSpec& spec, int radius);

struct ModuleCheckReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::size_t vectors_checked = 0;
  std::optional<std::string> counterexample;
};

/// For `sample_count` random pairs of symbols with exponents in the symbol
/// box, checks act([a,b]) = act(a)act(b) - act(b)act(a) on every weight space
/// of the module box, plus t^m(t^n v) = t^{m+n} v.
ModuleCheckReport verify_module_axioms(const CuspidalModule& m, int symbol_box, std::size_t sample_count,
                                       std::uint64_t seed, Execution exec = Execution::Parallel);

/// Entrywise agreement of all symbol actions on the weight box. False when
/// the tori or alpha differ; throws DimensionMismatch when the U layouts differ.
bool modules_equal_on_box(const CuspidalModule& a, const CuspidalModule& b, int box, int symbol_box = 2);

/// Weight multiplicities over [-box, box]^d.
struct MultiplicityReport {
  std::map<ExpVec, std::size_t> multiplicity;
  std::size_t bound = 0;
  bool uniform = true;
};
MultiplicityReport weight_multiplicities(const CuspidalModule& m, int box);

/// D(u, m) = t^{-m} d(u, m) on U and L(m, r) = t^{-c} t^{-m} t^{m+r} on U
/// (c the R-part of w + r on U_w), as full End(U) matrices.
struct OperatorFamily {
  GradedVectorSpace space;
  std::function<ExactMatrix(int u, const ExpVec& m)> d;
  std::function<ExactMatrix(const ExpVec& m, const ExpVec& r)> l;
  int degree_bound = 3;
};

OperatorFamily operator_family(const CuspidalModule& m, int degree_bound = 3);

/// f(u, p) and g(w, p) of D(u, m) = sum m^p/p! f(u, p), L(m, w) = sum m^p/p! g(w, p).
struct PolynomialCoefficients {
  TorusSpec spec;
  GradedVectorSpace space;
  std::map<std::pair<int, ExpVec>, ExactMatrix> f;
  std::map<std::pair<ExpVec, ExpVec>, ExactMatrix> g;
};

/// Exact multivariate finite differences over m = B c, c in [0, D]^d. Throws
/// DegreeBoundViolated when the out-of-grid check fails (or a coefficient of
/// total degree > D survives) and ConstantTermMismatch when f(u, 0) is not
/// (u | alpha + w) Id on U_w.
PolynomialCoefficients extract_coefficients(const OperatorFamily& family, const TorusSpec& spec,
                                            const std::vector<CycloNum>& alpha, bool out_of_grid_check = true);

/// rho(x^p d_u) = f(u, p) for |p| >= 1, rho(x^l t^w) = g(w, l). Throws RelationViolated.
GRepresentation coefficients_to_representation(const PolynomialCoefficients& coeffs);

struct RelationReport {
  bool pass = true;
  std::size_t checked = 0;
  std::optional<std::string> counterexample;
};

/// The commutators of D and L on sampled (u, v, m, n, r, s):
///   [D(u,m), D(v,n)] = (u|n)(D(v,m+n) - D(v,n)) - (v|m)(D(u,m+n) - D(u,m))
///   [D(u,m), L(n,s)] = (u|n+s) L(m+n,s) - (u|n) L(n,s) - (u|c_w(s)) L(n,s) on U_w
///   [L(m,r), L(n,s)] = (sigma(r,s) - sigma(s,r)) L(m+n+e, v),  r + s = e + v
/// with c_w(s) = w + s - canonical_rep(w + s).
RelationReport verify_operator_relations(const OperatorFamily& family, const TorusSpec& spec, int box,
                                         std::size_t sample_count, std::uint64_t seed);

/// Box-scale irreducibility evidence: weight-preserving commutant of the
/// materialized action, and whether every basis vector generates the whole box.
/// A negative symbol box means max_i B_ii, the least radius reaching R \ {0}.
struct IrreducibilityEvidence {
  std::size_t commutant_dim = 0;
  bool cyclic = true;
  std::optional<std::string> non_cyclic_vector;
};
IrreducibilityEvidence box_irreducibility_evidence(const CuspidalModule& m, int box, int symbol_box = -1);

}  // namespace qtl
