#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "qtl/matrix.hpp"
#include "qtl/parallel.hpp"
#include "qtl/torus.hpp"

namespace qtl {

/// The generators X_{2i-1}, X_{2i} of M_{k_i}, one pair per noncommuting pair.
///
/// Only the small k_i x k_i factors are stored; full N x N matrices are
/// formed on request by Kronecker products.
class XGenerators {
 public:
  explicit XGenerators(const TorusSpec& spec);

  /// X_{2i-1}^a X_{2i}^b for pair i (0-based), exponents taken mod k_i.
  ExactMatrix factor(int pair, std::int64_t a, std::int64_t b) const;
  /// The generator X_{slot+1} (0-based slot < 2z) as a full N x N matrix.
  ExactMatrix generator(int slot) const;

  const TorusSpec& spec() const { return spec_; }

 private:
  TorusSpec spec_;
};

/// X_{2i-1}^a X_{2i}^b for pair i (0-based), a k_i x k_i matrix.
ExactMatrix x_factor(const TorusSpec& spec, int pair, std::int64_t a, std::int64_t b);

/// X^n = tensor_i X_{2i-1}^{n_{2i-1}} X_{2i}^{n_{2i}}, an N x N matrix.
ExactMatrix x_power(const TorusSpec& spec, const ExpVec& n);

enum class SigmaConvention { Standard, Flipped };

struct ProductRelationReport {
  bool pass = true;
  std::size_t checked = 0;
  std::optional<std::pair<ExpVec, ExpVec>> counterexample;
};

/// Checks X^m X^n = sigma(m, n) X^{m+n} for all m, n in [0, box]^d.
/// `Flipped` uses sigma_hat(n, m) instead, which must fail for z >= 1.
ProductRelationReport verify_product_relation(const TorusSpec& spec, int box,
                                              SigmaConvention convention = SigmaConvention::Standard,
                                              Execution exec = Execution::Parallel);

/// coefficient * X^{exponent}
struct XMonomial {
  CycloNum coeff;
  ExpVec exponent;
};

/// [X^r, X^s] = (sigma(r,s) - sigma(s,r)) X^{r+s}, exponent reported as its Gamma_0 class.
XMonomial glN_bracket(const TorusSpec& spec, const ExpVec& r, const ExpVec& s);

/// dim span{X^w : w in Gamma_0}.
std::size_t x_span_dimension(const TorusSpec& spec);

}  // namespace qtl
