#include "qtl/matrep.hpp"

#include "qtl/errors.hpp"

namespace qtl {

namespace {

std::int64_t mod(std::int64_t a, std::int64_t k) {
  std::int64_t r = a % k;
  return r < 0 ? r + k : r;
}

}  // namespace

ExactMatrix x_factor(const TorusSpec& spec, int pair, std::int64_t a, std::int64_t b) {
  const std::int64_t k = spec.orders().at(pair);
  const long long step = spec.field_order() / k;
  ExactMatrix f(static_cast<std::size_t>(k), static_cast<std::size_t>(k), spec.field());
  // diag(1, q, ..., q^{k-1})^a times the cyclic shift E_{r, r+1}^b:
  // row r carries q^{a r} in column r + b.
  for (std::int64_t r = 0; r < k; ++r)
    f(static_cast<std::size_t>(r), static_cast<std::size_t>(mod(r + b, k))) = spec.root(step * mod(a * r, k));
  return f;
}

XGenerators::XGenerators(const TorusSpec& spec) : spec_(spec) {}

ExactMatrix XGenerators::factor(int pair, std::int64_t a, std::int64_t b) const {
  return x_factor(spec_, pair, a, b);
}

ExactMatrix XGenerators::generator(int slot) const {
  ExactMatrix out = ExactMatrix::identity(1, spec_.field());
  for (int i = 0; i < spec_.pairs(); ++i) {
    const std::int64_t a = slot == 2 * i ? 1 : 0;
    const std::int64_t b = slot == 2 * i + 1 ? 1 : 0;
    out = kronecker(out, factor(i, a, b));
  }
  return out;
}

ExactMatrix x_power(const TorusSpec& spec, const ExpVec& n) {
  ExactMatrix out = ExactMatrix::identity(1, spec.field());
  for (int i = 0; i < spec.pairs(); ++i) out = kronecker(out, x_factor(spec, i, n[2 * i], n[2 * i + 1]));
  return out;
}

ProductRelationReport verify_product_relation(const TorusSpec& spec, int box, SigmaConvention convention,
                                              Execution exec) {
  const auto points = box_points(static_cast<std::size_t>(spec.rank()), 0, box);
  using Failure = std::optional<std::pair<ExpVec, ExpVec>>;
  const auto failure = first_failure(points.size(), exec, [&](std::size_t i) -> Failure {
    const ExpVec& m = points[i];
    const ExactMatrix xm = x_power(spec, m);
    for (const ExpVec& n : points) {
      const CycloNum s = convention == SigmaConvention::Standard ? sigma_hat(spec, m, n) : sigma_hat(spec, n, m);
      if (!(xm * x_power(spec, n) == s * x_power(spec, m + n))) return std::pair{m, n};
    }
    return std::nullopt;
  });
  ProductRelationReport report;
  report.checked = points.size() * points.size();
  if (failure) {
    report.pass = false;
    report.counterexample = failure;
  }
  return report;
}

XMonomial glN_bracket(const TorusSpec& spec, const ExpVec& r, const ExpVec& s) {
  return {sigma_commutator(spec, r, s), canonical_rep(spec, r + s)};
}

std::size_t x_span_dimension(const TorusSpec& spec) {
  const auto n = static_cast<std::size_t>(spec.matrix_size());
  RowReducer rr(n * n, spec.field());
  for (const auto& w : spec.gamma0()) {
    const ExactMatrix x = x_power(spec, w);
    std::vector<CycloNum> v;
    v.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v.push_back(x(i, j));
    rr.add(std::move(v));
  }
  return rr.rank();
}

}  // namespace qtl
