#include "qtl/errors.hpp"
#include "qtl/polynomial.hpp"
#include "qtl/repn.hpp"

namespace qtl {

namespace {

// Basis of {H : T_k H = H S_k for all k}, H of size rows x cols.
std::vector<ExactMatrix> intertwiners(const std::vector<ExactMatrix>& t, const std::vector<ExactMatrix>& s,
                                      std::size_t rows, std::size_t cols, const CycloField& field) {
  const std::size_t nvars = rows * cols;
  RowReducer rr(nvars, field);
  const CycloNum zero(field, 0);
  for (std::size_t op = 0; op < t.size(); ++op) {
    const ExactMatrix& a = t[op];
    const ExactMatrix& b = s[op];
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::vector<CycloNum> row(nvars, zero);
        bool any = false;
        for (std::size_t k = 0; k < rows; ++k)
          if (!a(i, k).is_zero()) {
            row[k * cols + j] += a(i, k);
            any = true;
          }
        for (std::size_t k = 0; k < cols; ++k)
          if (!b(k, j).is_zero()) {
            row[i * cols + k] -= b(k, j);
            any = true;
          }
        if (any) rr.add(std::move(row));
      }
  }
  std::vector<ExactMatrix> out;
  for (const auto& v : rr.kernel()) {
    ExactMatrix h(rows, cols, field);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) h(i, j) = v[i * cols + j];
    out.push_back(std::move(h));
  }
  return out;
}

std::vector<ExactMatrix> gld_blocks(const GRepresentation& rep, std::size_t cls) {
  const auto d = static_cast<std::size_t>(rep.spec().rank());
  const auto& sp = rep.space();
  std::vector<ExactMatrix> out;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out.push_back(rep.act(GKey::xd(ExpVec::unit(d, i), static_cast<int>(j)))
                        .block(sp.offset(cls), sp.offset(cls), sp.dim(cls), sp.dim(cls)));
  return out;
}

// Restriction of `ops` to the invariant subspace spanned by the columns of `basis`.
std::vector<ExactMatrix> restrict_to(const std::vector<ExactMatrix>& ops, const ExactMatrix& basis) {
  std::vector<ExactMatrix> out;
  for (const auto& a : ops) {
    auto y = solve(basis, a * basis);
    if (!y) throw Error("subspace is not invariant");
    out.push_back(std::move(*y));
  }
  return out;
}

ExactMatrix columns_of(const std::vector<std::vector<CycloNum>>& cols, std::size_t rows, const CycloField& f) {
  return ExactMatrix::from_columns(cols, rows, f);
}

struct GldSub {
  std::size_t cls = 0;
  ExactMatrix basis;  // columns in the coordinates of component cls
  GLdModule v;
};

// Grows the gl_d-span of `start` inside one component, then splits it with
// commutant elements until the endomorphism algebra is the scalars.
GldSub irreducible_gld_sub(const GRepresentation& rep, std::size_t cls, std::vector<CycloNum> start) {
  const CycloField& f = rep.spec().field();
  const auto ops = gld_blocks(rep, cls);
  const std::size_t n = rep.space().dim(cls);

  RowReducer rr(n, f);
  std::vector<std::vector<CycloNum>> span;
  std::vector<std::vector<CycloNum>> queue{std::move(start)};
  while (!queue.empty()) {
    auto v = std::move(queue.back());
    queue.pop_back();
    if (!rr.add(v)) continue;
    span.push_back(v);
    for (const auto& a : ops) queue.push_back(qtl::apply(a, v));
  }
  ExactMatrix basis = columns_of(span, n, f);

  for (;;) {
    auto y = restrict_to(ops, basis);
    const std::size_t k = basis.cols();
    const auto ends = intertwiners(y, y, k, k, f);
    if (ends.size() <= 1) return {cls, basis, GLdModule{k, std::move(y)}};
    const ExactMatrix* c = nullptr;
    for (const auto& e : ends) {
      // Skip multiples of the identity.
      bool scalar = true;
      for (std::size_t i = 0; i < k && scalar; ++i)
        for (std::size_t j = 0; j < k && scalar; ++j)
          scalar = i == j ? e(i, i) == e(0, 0) : e(i, j).is_zero();
      if (!scalar) {
        c = &e;
        break;
      }
    }
    const Poly p = minimal_polynomial(*c);
    const Poly sf = square_free_part(p);
    ExactMatrix cut;
    if (degree(sf) < degree(p)) {
      cut = evaluate(sf, *c);
    } else if (auto root = find_simple_root(p, f)) {
      cut = *c - *root * ExactMatrix::identity(k, f);
    } else {
      throw SplittingNeedsFieldExtension("minimal polynomial of degree " + std::to_string(degree(p)) +
                                         " has no root in Q(zeta_" + std::to_string(f.order()) + ")");
    }
    const auto ker = kernel(cut);
    basis = basis * columns_of(ker, k, f);
  }
}

std::pair<std::size_t, std::vector<CycloNum>> first_component(const GRepresentation& rep,
                                                              const std::vector<CycloNum>& probe) {
  const auto& sp = rep.space();
  if (probe.size() != sp.total()) throw DimensionMismatch("probe has the wrong length");
  for (std::size_t c = 0; c < sp.classes(); ++c) {
    std::vector<CycloNum> part(probe.begin() + static_cast<long>(sp.offset(c)),
                               probe.begin() + static_cast<long>(sp.offset(c) + sp.dim(c)));
    for (const auto& x : part)
      if (!x.is_zero()) return {c, part};
  }
  throw Error("probe vector is zero");
}

}  // namespace

GLdModule find_irreducible_gld_submodule(const GRepresentation& rep, const std::vector<CycloNum>& probe) {
  auto [cls, part] = first_component(rep, probe);
  return irreducible_gld_sub(rep, cls, std::move(part)).v;
}

std::size_t gld_hom_dimension(const GLdModule& a, const GLdModule& b) {
  if (a.e.empty()) return 0;
  return intertwiners(b.e, a.e, b.dim, a.dim, a.e.front().field()).size();
}

TensorDecomposition decompose_tensor(const GRepresentation& rep, const std::vector<std::vector<CycloNum>>& probes) {
  const TorusSpec& spec = rep.spec();
  const CycloField& f = spec.field();
  const auto& sp = rep.space();
  const auto& g = spec.gamma0();
  if (rep.dim() == 0) throw NotIrreducible("zero module");
  if (min_annihilation_degree(rep) > 1) throw NotIrreducible("the ideal G~+ acts nontrivially");
  if (commutant(rep).size() != 1) throw NotIrreducible("graded commutant is not the scalars");

  std::vector<std::vector<CycloNum>> seeds = probes;
  if (seeds.empty()) {
    std::vector<CycloNum> e(sp.total(), CycloNum(f, 0));
    e[0] = CycloNum(f, 1);
    seeds.push_back(std::move(e));
  }
  std::optional<GldSub> sub;
  for (const auto& s : seeds) {
    bool nonzero = false;
    for (const auto& x : s) nonzero = nonzero || !x.is_zero();
    if (!nonzero) continue;
    auto [cls, part] = first_component(rep, s);
    sub = irreducible_gld_sub(rep, cls, std::move(part));
    break;
  }
  if (!sub) throw Error("every probe vector is zero");
  const GLdModule& v = sub->v;
  const std::size_t dv = v.dim;

  // W_r = Hom_{gl_d}(V, U_r).
  std::vector<std::vector<ExactMatrix>> hom(g.size());
  GradedGLNModule w;
  for (std::size_t r = 0; r < g.size(); ++r) {
    if (sp.dim(r) > 0) hom[r] = intertwiners(gld_blocks(rep, r), v.e, sp.dim(r), dv, f);
    for (std::size_t b = 0; b < hom[r].size(); ++b) w.grading.push_back(r);
  }
  w.dim = w.grading.size();
  for (std::size_t r = 0; r < g.size(); ++r)
    if (dv * hom[r].size() != sp.dim(r))
      throw NotIrreducible("component " + g[r].to_string() + " is not V (x) Hom(V, U_r)");
  std::vector<std::size_t> w_offset(g.size(), 0);
  for (std::size_t r = 1; r < g.size(); ++r) w_offset[r] = w_offset[r - 1] + hom[r - 1].size();

  // X^c acts on W by post-composition, expressed in the Hom bases.
  for (std::size_t c = 0; c < g.size(); ++c) {
    const ExactMatrix& x = rep.act(GKey::xt(spec.zero(), g[c]));
    ExactMatrix m(w.dim, w.dim, f);
    for (std::size_t r = 0; r < g.size(); ++r) {
      if (hom[r].empty()) continue;
      const std::size_t t = spec.gamma0_index(canonical_rep(spec, g[c] + g[r]));
      const ExactMatrix xb = x.block(sp.offset(t), sp.offset(r), sp.dim(t), sp.dim(r));
      // Columns: vec(H) for the basis of W_t.
      ExactMatrix lhs(sp.dim(t) * dv, hom[t].size(), f);
      for (std::size_t b = 0; b < hom[t].size(); ++b)
        for (std::size_t i = 0; i < sp.dim(t); ++i)
          for (std::size_t a = 0; a < dv; ++a) lhs(i * dv + a, b) = hom[t][b](i, a);
      for (std::size_t b = 0; b < hom[r].size(); ++b) {
        const ExactMatrix img = xb * hom[r][b];
        ExactMatrix rhs(sp.dim(t) * dv, 1, f);
        for (std::size_t i = 0; i < sp.dim(t); ++i)
          for (std::size_t a = 0; a < dv; ++a) rhs(i * dv + a, 0) = img(i, a);
        if (img.is_zero()) continue;
        auto coeff = solve(lhs, rhs);
        if (!coeff) throw NotIrreducible("X-action leaves the Hom spaces");
        for (std::size_t b2 = 0; b2 < hom[t].size(); ++b2) m(w_offset[t] + b2, w_offset[r] + b) = (*coeff)(b2, 0);
      }
    }
    w.x.push_back(std::move(m));
  }

  GLdGLNModule vw{v, w};
  validate(spec, vw);

  // Phi(v_a (x) w_b) = H_b(e_a), in the class-major order of pullback().
  ExactMatrix iso(rep.dim(), rep.dim(), f);
  for (std::size_t t = 0; t < g.size(); ++t) {
    const std::size_t kt = hom[t].size();
    for (std::size_t a = 0; a < dv; ++a)
      for (std::size_t b = 0; b < kt; ++b) {
        const std::size_t col = sp.offset(t) + a * kt + b;
        for (std::size_t i = 0; i < sp.dim(t); ++i) iso(sp.offset(t) + i, col) = hom[t][b](i, a);
      }
  }
  if (rank(iso) != rep.dim()) throw NotIrreducible("tensor map V (x) W -> U is not invertible");
  const GRepresentation pb = pullback(spec, vw);
  for (const auto& k : pb.generators())
    if (!(rep.act(k) * iso == iso * pb.act(k))) throw NotIrreducible("tensor map fails to intertwine " + to_string(k));
  return {std::move(vw), std::move(iso)};
}

}  // namespace qtl
