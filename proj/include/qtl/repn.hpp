#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qtl/gtilde.hpp"
#include "qtl/matrix.hpp"
#include "qtl/parallel.hpp"
#include "qtl/torus.hpp"

namespace qtl {

/// U = (+)_{w in Gamma_0} U_w with a class-major basis: the basis of U_w is a
/// contiguous block, blocks ordered as spec.gamma0(). Components may be empty.
class GradedVectorSpace {
 public:
  GradedVectorSpace() = default;
  /// `dims[i]` is the dimension of the component of class spec.gamma0()[i].
  explicit GradedVectorSpace(std::vector<std::size_t> dims);

  std::size_t classes() const { return dims_.size(); }
  std::size_t dim(std::size_t cls) const { return dims_[cls]; }
  std::size_t offset(std::size_t cls) const { return offsets_[cls]; }
  std::size_t total() const { return total_; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  std::size_t max_dim() const;
  /// Class index of the basis vector at position `pos`.
  std::size_t class_of(std::size_t pos) const;

  friend bool operator==(const GradedVectorSpace&, const GradedVectorSpace&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::vector<std::size_t> offsets_;
  std::size_t total_ = 0;
};

/// A finite-dimensional Gamma-graded G~-module. Generators of filtration
/// degree >= cutoff act as zero; generators without an entry act as zero.
class GRepresentation {
 public:
  GRepresentation(const TorusSpec& spec, GradedVectorSpace space, int cutoff);

  const TorusSpec& spec() const { return spec_; }
  const GradedVectorSpace& space() const { return space_; }
  int cutoff() const { return cutoff_; }
  std::size_t dim() const { return space_.total(); }

  /// Sets rho(k); zero matrices are dropped. Throws InvalidRepresentation on
  /// a size mismatch or when k has degree >= cutoff and m is nonzero.
  void set(const GKey& k, ExactMatrix m);
  /// rho(k), the zero matrix when absent.
  const ExactMatrix& act(const GKey& k) const;
  ExactMatrix act(const GTildeElement& a) const;
  const std::map<GKey, ExactMatrix>& actions() const { return action_; }

  /// Every generator of degree < cutoff.
  std::vector<GKey> generators() const;

  /// First generator whose matrix does not respect the grading.
  std::optional<GKey> block_violation() const;

 private:
  TorusSpec spec_;
  GradedVectorSpace space_;
  int cutoff_;
  std::map<GKey, ExactMatrix> action_;
  ExactMatrix zero_;
};

/// gl_d action on V: e[i * d + j] is the matrix of E_ij.
struct GLdModule {
  std::size_t dim = 0;
  std::vector<ExactMatrix> e;
};

/// Graded gl_N action on W: x[c] is the matrix of X^w for w = gamma0()[c];
/// grading[b] is the class index of basis vector b, nondecreasing.
struct GradedGLNModule {
  std::size_t dim = 0;
  std::vector<ExactMatrix> x;
  std::vector<std::size_t> grading;
};

struct GLdGLNModule {
  GLdModule v;
  GradedGLNModule w;
};

GLdModule natural_gld(const TorusSpec& spec);
GLdModule trivial_gld(const TorusSpec& spec, std::size_t dim = 1);
/// The 1-dimensional module concentrated in the class of 0, X^{w0} = 1.
GradedGLNModule trivial_glN(const TorusSpec& spec);
/// M_N with X^w acting by left multiplication, basis X^w (w in Gamma_0), W_w = C X^w.
GradedGLNModule graded_regular_glN(const TorusSpec& spec);

/// Throws InvalidModuleData when the gl_d relations, the gl_N relations,
/// X^{w0} = Id, or the grading fail.
void validate(const TorusSpec& spec, const GLdModule& v);
void validate(const TorusSpec& spec, const GradedGLNModule& w);
void validate(const TorusSpec& spec, const GLdGLNModule& vw);

/// The class-major layout of V (x) W: U_t = V (x) W_t, basis (t, a, b) with
/// a in V, b in W_t.
GradedVectorSpace tensor_space(const TorusSpec& spec, const GLdGLNModule& vw);

/// XD(e_i, j) -> E_ij (x) Id, XT(0, w) -> Id (x) X^w, cutoff 1.
GRepresentation pullback(const TorusSpec& spec, const GLdGLNModule& vw);

struct RepCheckReport {
  bool pass = true;
  std::size_t pairs_checked = 0;
  std::optional<std::string> failure;
};

/// Checks rho([a,b]) = [rho(a), rho(b)] for all generator pairs of degree
/// <= degree_bound, the block structure, and that the class of 0 acts
/// unitally: rho(XT(l, w0)) = delta_{l,0} Id.
RepCheckReport verify_representation(const GRepresentation& rep, int degree_bound,
                                     Execution exec = Execution::Parallel);

/// Basis of the grade-preserving matrices commuting with every generator.
std::vector<ExactMatrix> commutant(const GRepresentation& rep);
/// Commutant dimension 1. Decisive for semisimple modules only: an
/// indecomposable extension such as jet_module(spec, 2) also passes.
bool is_absolutely_irreducible(const GRepresentation& rep);

/// Least p with every generator of degree >= p acting as zero.
int min_annihilation_degree(const GRepresentation& rep);

/// Sets rho(XT(l, w0)) = delta_{l,0} Id, leaving everything else alone. The
/// result is again a representation: XT(., w0) only appears in brackets with
/// XD symbols, where both sides vanish.
GRepresentation make_unital(const GRepresentation& rep);

/// Truncated jets: span{x^a t^w : |a| < order} with XD acting as
/// derivations and XT by left multiplication (t^e = exp(e|x) for e in R),
/// made unital. Cutoff = order.
GRepresentation jet_module(const TorusSpec& spec, int order);

GRepresentation direct_sum(const GRepresentation& a, const GRepresentation& b);

/// P^{-1} rho(g) P for a random grade-preserving P with small integer entries.
GRepresentation scramble(const GRepresentation& rep, std::uint64_t seed);

/// The same module written in the basis given by the columns of p (grade-preserving).
GRepresentation change_basis(const GRepresentation& rep, const ExactMatrix& p);

/// Same space and identical action on every generator.
bool representations_equal(const GRepresentation& a, const GRepresentation& b);

struct TensorDecomposition {
  GLdGLNModule vw;
  /// Columns are the images of the basis (t, a, b) of pullback(vw) in rep.
  ExactMatrix iso;
};

/// Splits an absolutely irreducible gl_d (+) gl_N module as V (x) W.
/// `probes` seed the gl_d spin-up (unit vectors when empty). Throws
/// NotIrreducible and SplittingNeedsFieldExtension.
TensorDecomposition decompose_tensor(const GRepresentation& rep, const std::vector<std::vector<CycloNum>>& probes = {});

/// An irreducible gl_d-submodule grown from `probe` inside its first nonzero
/// homogeneous component, with the matrices of the restricted action.
GLdModule find_irreducible_gld_submodule(const GRepresentation& rep, const std::vector<CycloNum>& probe);

/// dim Hom_{gl_d}(a, b).
std::size_t gld_hom_dimension(const GLdModule& a, const GLdModule& b);

}  // namespace qtl
