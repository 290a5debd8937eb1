#include "qtl/repn.hpp"

#include <algorithm>
#include <random>

#include "qtl/errors.hpp"
#include "qtl/matrep.hpp"

namespace qtl {

GradedVectorSpace::GradedVectorSpace(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  offsets_.reserve(dims_.size());
  for (auto n : dims_) {
    offsets_.push_back(total_);
    total_ += n;
  }
}

std::size_t GradedVectorSpace::max_dim() const {
  std::size_t m = 0;
  for (auto n : dims_) m = std::max(m, n);
  return m;
}

std::size_t GradedVectorSpace::class_of(std::size_t pos) const {
  for (std::size_t c = 0; c < dims_.size(); ++c)
    if (pos < offsets_[c] + dims_[c]) return c;
  throw DimensionMismatch("basis position " + std::to_string(pos) + " out of range");
}

GRepresentation::GRepresentation(const TorusSpec& spec, GradedVectorSpace space, int cutoff)
    : spec_(spec), space_(std::move(space)), cutoff_(cutoff), zero_(space_.total(), space_.total(), spec.field()) {
  if (space_.classes() != spec.gamma0().size())
    throw InvalidRepresentation("space has " + std::to_string(space_.classes()) + " classes, expected " +
                                std::to_string(spec.gamma0().size()));
  if (cutoff < 0) throw InvalidRepresentation("negative cutoff");
}

void GRepresentation::set(const GKey& k, ExactMatrix m) {
  validate_key(spec_, k);
  if (m.rows() != dim() || m.cols() != dim())
    throw InvalidRepresentation(to_string(k) + ": matrix is " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()) + ", expected " + std::to_string(dim()));
  if (m.is_zero()) {
    action_.erase(k);
    return;
  }
  if (k.degree() >= cutoff_) throw InvalidRepresentation(to_string(k) + ": nonzero action at or above the cutoff");
  action_.insert_or_assign(k, std::move(m));
}

const ExactMatrix& GRepresentation::act(const GKey& k) const {
  auto it = action_.find(k);
  return it == action_.end() ? zero_ : it->second;
}

ExactMatrix GRepresentation::act(const GTildeElement& a) const {
  ExactMatrix out = zero_;
  for (const auto& [k, c] : a) {
    auto it = action_.find(k);
    if (it != action_.end()) out.add_scaled(c, it->second);
  }
  return out;
}

std::vector<GKey> GRepresentation::generators() const {
  std::vector<GKey> out;
  for (int n = 0; n < cutoff_; ++n)
    for (auto& k : gtilde_basis(spec_, n)) out.push_back(std::move(k));
  return out;
}

namespace {

std::size_t class_index_of(const TorusSpec& spec, const GKey& k) {
  return spec.gamma0_index(k.kind == GKey::Kind::XD ? spec.central_class() : k.cls);
}

// Target class of each source class under a generator of class `shift`.
std::vector<std::size_t> class_shift_table(const TorusSpec& spec, std::size_t shift) {
  const auto& g = spec.gamma0();
  std::vector<std::size_t> out(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) out[s] = spec.gamma0_index(canonical_rep(spec, g[shift] + g[s]));
  return out;
}

}  // namespace

std::optional<GKey> GRepresentation::block_violation() const {
  for (const auto& [k, m] : action_) {
    const auto target = class_shift_table(spec_, class_index_of(spec_, k));
    for (std::size_t j = 0; j < dim(); ++j) {
      const std::size_t t = target[space_.class_of(j)];
      for (std::size_t i = 0; i < dim(); ++i) {
        if (m(i, j).is_zero()) continue;
        if (i < space_.offset(t) || i >= space_.offset(t) + space_.dim(t)) return k;
      }
    }
  }
  return std::nullopt;
}

GLdModule natural_gld(const TorusSpec& spec) {
  const auto d = static_cast<std::size_t>(spec.rank());
  GLdModule v{d, {}};
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) v.e.push_back(ExactMatrix::unit(d, d, i, j, spec.field()));
  return v;
}

GLdModule trivial_gld(const TorusSpec& spec, std::size_t dim) {
  const auto d = static_cast<std::size_t>(spec.rank());
  return {dim, std::vector<ExactMatrix>(d * d, ExactMatrix(dim, dim, spec.field()))};
}

GradedGLNModule trivial_glN(const TorusSpec& spec) {
  GradedGLNModule w;
  w.dim = 1;
  const std::size_t w0 = spec.gamma0_index(spec.central_class());
  for (std::size_t c = 0; c < spec.gamma0().size(); ++c)
    w.x.push_back(c == w0 ? ExactMatrix::identity(1, spec.field()) : ExactMatrix(1, 1, spec.field()));
  w.grading = {w0};
  return w;
}

GradedGLNModule graded_regular_glN(const TorusSpec& spec) {
  const auto& g = spec.gamma0();
  GradedGLNModule w;
  w.dim = g.size();
  for (std::size_t r = 0; r < g.size(); ++r) {
    // X^r X^s = sigma(r, s) X^{r+s}, and X^{r+s} only depends on the class.
    ExactMatrix m(g.size(), g.size(), spec.field());
    for (std::size_t s = 0; s < g.size(); ++s)
      m(spec.gamma0_index(canonical_rep(spec, g[r] + g[s])), s) = sigma_hat(spec, g[r], g[s]);
    w.x.push_back(std::move(m));
  }
  for (std::size_t s = 0; s < g.size(); ++s) w.grading.push_back(s);
  return w;
}

void validate(const TorusSpec& spec, const GLdModule& v) {
  const auto d = static_cast<std::size_t>(spec.rank());
  if (v.e.size() != d * d) throw InvalidModuleData("gl_d module needs d^2 matrices");
  for (const auto& m : v.e)
    if (m.rows() != v.dim || m.cols() != v.dim) throw InvalidModuleData("gl_d matrix has the wrong size");
  // [E_ij, E_kl] = delta_jk E_il - delta_li E_kj
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        for (std::size_t l = 0; l < d; ++l) {
          ExactMatrix rhs(v.dim, v.dim, spec.field());
          if (j == k) rhs += v.e[i * d + l];
          if (l == i) rhs -= v.e[k * d + j];
          if (!(commutator(v.e[i * d + j], v.e[k * d + l]) == rhs))
            throw InvalidModuleData("gl_d relation fails for [E" + std::to_string(i + 1) + std::to_string(j + 1) +
                                    ", E" + std::to_string(k + 1) + std::to_string(l + 1) + "]");
        }
}

void validate(const TorusSpec& spec, const GradedGLNModule& w) {
  const auto& g = spec.gamma0();
  if (w.x.size() != g.size()) throw InvalidModuleData("gl_N module needs one matrix per Gamma_0 class");
  if (w.grading.size() != w.dim) throw InvalidModuleData("grading length differs from dim W");
  if (!std::is_sorted(w.grading.begin(), w.grading.end()))
    throw InvalidModuleData("W basis must be ordered by class");
  for (auto c : w.grading)
    if (c >= g.size()) throw InvalidModuleData("grading class out of range");
  for (const auto& m : w.x)
    if (m.rows() != w.dim || m.cols() != w.dim) throw InvalidModuleData("gl_N matrix has the wrong size");
  const std::size_t w0 = spec.gamma0_index(spec.central_class());
  if (!w.x[w0].is_identity() && w.dim > 0) throw InvalidModuleData("X^" + g[w0].to_string() + " must act as Id");
  for (std::size_t r = 0; r < g.size(); ++r) {
    for (std::size_t s = 0; s < g.size(); ++s) {
      const auto [c, cls] = glN_bracket(spec, g[r], g[s]);
      ExactMatrix rhs = c * w.x[spec.gamma0_index(cls)];
      if (!(commutator(w.x[r], w.x[s]) == rhs))
        throw InvalidModuleData("gl_N relation fails for [X^" + g[r].to_string() + ", X^" + g[s].to_string() + "]");
    }
    for (std::size_t b = 0; b < w.dim; ++b)
      for (std::size_t a = 0; a < w.dim; ++a) {
        if (w.x[r](a, b).is_zero()) continue;
        if (w.grading[a] != spec.gamma0_index(canonical_rep(spec, g[r] + g[w.grading[b]])))
          throw InvalidModuleData("X^" + g[r].to_string() + " does not respect the grading");
      }
  }
}

void validate(const TorusSpec& spec, const GLdGLNModule& vw) {
  validate(spec, vw.v);
  validate(spec, vw.w);
}

GradedVectorSpace tensor_space(const TorusSpec& spec, const GLdGLNModule& vw) {
  std::vector<std::size_t> dims(spec.gamma0().size(), 0);
  for (auto c : vw.w.grading) dims[c] += vw.v.dim;
  return GradedVectorSpace(std::move(dims));
}

GRepresentation pullback(const TorusSpec& spec, const GLdGLNModule& vw) {
  validate(spec, vw);
  const auto d = static_cast<std::size_t>(spec.rank());
  const GradedVectorSpace space = tensor_space(spec, vw);
  const std::size_t dv = vw.v.dim;
  // Position in U of v_a (x) w_b.
  std::vector<std::size_t> w_offset(spec.gamma0().size(), 0);
  for (std::size_t b = vw.w.dim; b-- > 0;) w_offset[vw.w.grading[b]] = b;
  auto pos = [&](std::size_t a, std::size_t b) {
    const std::size_t t = vw.w.grading[b];
    const std::size_t dwt = space.dim(t) / dv;
    return space.offset(t) + a * dwt + (b - w_offset[t]);
  };
  auto tensor = [&](const ExactMatrix& left, const ExactMatrix& right) {
    ExactMatrix m(space.total(), space.total(), spec.field());
    for (std::size_t a = 0; a < dv; ++a)
      for (std::size_t b = 0; b < vw.w.dim; ++b)
        for (std::size_t a2 = 0; a2 < dv; ++a2) {
          if (left(a2, a).is_zero()) continue;
          for (std::size_t b2 = 0; b2 < vw.w.dim; ++b2)
            if (!right(b2, b).is_zero()) m(pos(a2, b2), pos(a, b)) = left(a2, a) * right(b2, b);
        }
    return m;
  };
  GRepresentation rep(spec, space, 1);
  const ExactMatrix id_v = ExactMatrix::identity(dv, spec.field());
  const ExactMatrix id_w = ExactMatrix::identity(vw.w.dim, spec.field());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      rep.set(GKey::xd(ExpVec::unit(d, i), static_cast<int>(j)), tensor(vw.v.e[i * d + j], id_w));
  for (std::size_t c = 0; c < spec.gamma0().size(); ++c)
    rep.set(GKey::xt(spec.zero(), spec.gamma0()[c]), tensor(id_v, vw.w.x[c]));
  return rep;
}

RepCheckReport verify_representation(const GRepresentation& rep, int degree_bound, Execution exec) {
  const TorusSpec& spec = rep.spec();
  RepCheckReport report;
  if (auto bad = rep.block_violation()) {
    report.pass = false;
    report.failure = to_string(*bad) + " does not respect the grading";
    return report;
  }
  const ExpVec& w0 = spec.central_class();
  for (int n = 0; n < rep.cutoff(); ++n)
    for (const auto& l : compositions(static_cast<std::size_t>(spec.rank()), n)) {
      const ExactMatrix& m = rep.act(GKey::xt(l, w0));
      const bool ok = n == 0 ? (rep.dim() == 0 || m.is_identity()) : m.is_zero();
      if (!ok) {
        report.pass = false;
        report.failure = to_string(GKey::xt(l, w0)) + " must act as " + (n == 0 ? "Id" : "0");
        return report;
      }
    }

  std::vector<GKey> gens;
  for (int n = 0; n <= degree_bound; ++n)
    for (auto& k : gtilde_basis(spec, n)) gens.push_back(std::move(k));
  // Pairs involving a generator at or above the cutoff land at or above the
  // cutoff (the bracket respects the filtration), so both sides are zero.
  const int trunc = rep.cutoff() - 1;
  using Failure = std::optional<std::string>;
  const auto failure = first_failure(gens.size(), exec, [&](std::size_t i) -> Failure {
    const GKey& a = gens[i];
    if (a.degree() >= rep.cutoff()) return std::nullopt;
    const ExactMatrix& ra = rep.act(a);
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      const GKey& b = gens[j];
      if (b.degree() >= rep.cutoff()) continue;
      const ExactMatrix lhs = rep.act(bracket_G_keys(spec, a, b, trunc));
      const ExactMatrix& rb = rep.act(b);
      if (!(lhs == commutator(ra, rb))) return "rho([" + to_string(a) + ", " + to_string(b) + "]) != [rho, rho]";
    }
    return std::nullopt;
  });
  report.pairs_checked = gens.size() * (gens.size() - 1) / 2;
  if (failure) {
    report.pass = false;
    report.failure = failure;
  }
  return report;
}

std::vector<ExactMatrix> commutant(const GRepresentation& rep) {
  const TorusSpec& spec = rep.spec();
  const GradedVectorSpace& sp = rep.space();
  // Unknowns: the entries of each diagonal block C_s, blocks in class order.
  std::vector<std::size_t> var_offset(sp.classes());
  std::size_t nvars = 0;
  for (std::size_t s = 0; s < sp.classes(); ++s) {
    var_offset[s] = nvars;
    nvars += sp.dim(s) * sp.dim(s);
  }
  RowReducer rr(nvars, spec.field());
  const CycloNum zero(spec.field(), 0);
  for (const auto& [k, m] : rep.actions()) {
    if (nvars > 0 && rr.rank() + 1 >= nvars) break;  // only the scalars can remain
    const auto target = class_shift_table(spec, class_index_of(spec, k));
    for (std::size_t s = 0; s < sp.classes(); ++s) {
      const std::size_t t = target[s];
      const std::size_t ds = sp.dim(s), dt = sp.dim(t);
      if (ds == 0 || dt == 0) continue;
      // (A C_s - C_t A)_{ij} = sum_k A_ik C_s[k][j] - sum_k C_t[i][k] A_kj, A = block (t, s).
      for (std::size_t i = 0; i < dt; ++i)
        for (std::size_t j = 0; j < ds; ++j) {
          std::vector<CycloNum> row(nvars, zero);
          bool any = false;
          for (std::size_t kk = 0; kk < ds; ++kk) {
            const CycloNum& a = m(sp.offset(t) + i, sp.offset(s) + kk);
            if (a.is_zero()) continue;
            row[var_offset[s] + kk * ds + j] += a;
            any = true;
          }
          for (std::size_t kk = 0; kk < dt; ++kk) {
            const CycloNum& a = m(sp.offset(t) + kk, sp.offset(s) + j);
            if (a.is_zero()) continue;
            row[var_offset[t] + i * dt + kk] -= a;
            any = true;
          }
          if (any) rr.add(std::move(row));
        }
    }
  }
  std::vector<ExactMatrix> out;
  for (const auto& v : rr.kernel()) {
    ExactMatrix c(sp.total(), sp.total(), spec.field());
    for (std::size_t s = 0; s < sp.classes(); ++s)
      for (std::size_t i = 0; i < sp.dim(s); ++i)
        for (std::size_t j = 0; j < sp.dim(s); ++j)
          c(sp.offset(s) + i, sp.offset(s) + j) = v[var_offset[s] + i * sp.dim(s) + j];
    out.push_back(std::move(c));
  }
  return out;
}

bool is_absolutely_irreducible(const GRepresentation& rep) { return commutant(rep).size() == 1; }

int min_annihilation_degree(const GRepresentation& rep) {
  int top = -1;
  for (const auto& [k, m] : rep.actions()) top = std::max(top, k.degree());
  return top + 1;
}

GRepresentation make_unital(const GRepresentation& rep) {
  GRepresentation out = rep;
  const TorusSpec& spec = rep.spec();
  for (int n = 0; n < rep.cutoff(); ++n)
    for (const auto& l : compositions(static_cast<std::size_t>(spec.rank()), n))
      out.set(GKey::xt(l, spec.central_class()),
              n == 0 ? ExactMatrix::identity(rep.dim(), spec.field()) : ExactMatrix(rep.dim(), rep.dim(), spec.field()));
  return out;
}

GRepresentation jet_module(const TorusSpec& spec, int order) {
  const auto d = static_cast<std::size_t>(spec.rank());
  const auto& g = spec.gamma0();
  std::vector<ExpVec> jets;
  for (int n = 0; n < order; ++n)
    for (auto& a : compositions(d, n)) jets.push_back(std::move(a));
  std::map<ExpVec, std::size_t> jet_index;
  for (std::size_t i = 0; i < jets.size(); ++i) jet_index.emplace(jets[i], i);
  const std::size_t nj = jets.size();
  GradedVectorSpace space(std::vector<std::size_t>(g.size(), nj));
  auto pos = [&](std::size_t cls, const ExpVec& a) -> std::optional<std::size_t> {
    if (!a.is_nonnegative() || a.total() >= order) return std::nullopt;
    return cls * nj + jet_index.at(a);
  };
  GRepresentation rep(spec, space, order);
  const std::size_t n = space.total();

  for (int deg = 0; deg < order; ++deg) {
    for (const auto& p : compositions(d, deg + 1))
      for (std::size_t j = 0; j < d; ++j) {
        // x^p d_j (x^a t^w) = a_j x^{a+p-e_j} t^w + w_j x^{a+p} t^w
        ExactMatrix m(n, n, spec.field());
        for (std::size_t c = 0; c < g.size(); ++c)
          for (const auto& a : jets) {
            const std::size_t col = *pos(c, a);
            if (a[j] != 0)
              if (auto row = pos(c, a + p - ExpVec::unit(d, j))) m(*row, col) += CycloNum(static_cast<long>(a[j]));
            if (g[c][j] != 0)
              if (auto row = pos(c, a + p)) m(*row, col) += CycloNum(static_cast<long>(g[c][j]));
          }
        rep.set(GKey::xd(p, static_cast<int>(j)), std::move(m));
      }
    for (const auto& l : compositions(d, deg))
      for (std::size_t r = 0; r < g.size(); ++r) {
        // x^l t^r x^a t^w = sigma(r, w) x^{l+a} exp(e|x) t^v, r + w = e + v
        ExactMatrix m(n, n, spec.field());
        for (std::size_t c = 0; c < g.size(); ++c) {
          const auto [e, v] = decompose(spec, g[r] + g[c]);
          const std::size_t vc = spec.gamma0_index(v);
          const CycloNum s = sigma_hat(spec, g[r], g[c]);
          for (const auto& a : jets) {
            const std::size_t col = *pos(c, a);
            for (int extra = 0; l.total() + a.total() + extra < order; ++extra)
              for (const auto& cc : compositions(d, extra)) {
                const Rational w = exp_coefficient(e, cc);
                if (sgn(w) == 0) continue;
                if (auto row = pos(vc, l + a + cc)) m(*row, col) += s * CycloNum(w);
              }
          }
        }
        rep.set(GKey::xt(l, g[r]), std::move(m));
      }
  }
  return make_unital(rep);
}

GRepresentation direct_sum(const GRepresentation& a, const GRepresentation& b) {
  if (!(a.spec() == b.spec())) throw InvalidRepresentation("direct sum over different tori");
  const TorusSpec& spec = a.spec();
  const std::size_t nc = a.space().classes();
  std::vector<std::size_t> dims(nc);
  for (std::size_t c = 0; c < nc; ++c) dims[c] = a.space().dim(c) + b.space().dim(c);
  GradedVectorSpace space(dims);
  // Within each class the block of `a` comes first.
  std::vector<std::size_t> pa, pb;
  for (std::size_t c = 0; c < nc; ++c) {
    for (std::size_t i = 0; i < a.space().dim(c); ++i) pa.push_back(space.offset(c) + i);
    for (std::size_t i = 0; i < b.space().dim(c); ++i) pb.push_back(space.offset(c) + a.space().dim(c) + i);
  }
  GRepresentation out(spec, space, std::max(a.cutoff(), b.cutoff()));
  std::map<GKey, ExactMatrix> acc;
  auto place = [&](const GRepresentation& r, const std::vector<std::size_t>& p) {
    for (const auto& [k, m] : r.actions()) {
      auto [it, fresh] = acc.try_emplace(k, space.total(), space.total(), spec.field());
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
          if (!m(i, j).is_zero()) it->second(p[i], p[j]) = m(i, j);
    }
  };
  place(a, pa);
  place(b, pb);
  for (auto& [k, m] : acc) out.set(k, std::move(m));
  return out;
}

GRepresentation change_basis(const GRepresentation& rep, const ExactMatrix& p) {
  const ExactMatrix pinv = inverse(p);
  GRepresentation out(rep.spec(), rep.space(), rep.cutoff());
  for (const auto& [k, m] : rep.actions()) out.set(k, pinv * m * p);
  if (auto bad = out.block_violation()) throw InvalidRepresentation("basis change mixes classes at " + to_string(*bad));
  return out;
}

GRepresentation scramble(const GRepresentation& rep, std::uint64_t seed) {
  const TorusSpec& spec = rep.spec();
  const GradedVectorSpace& sp = rep.space();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> dist(-3, 3);
  ExactMatrix p(sp.total(), sp.total(), spec.field());
  for (std::size_t c = 0; c < sp.classes(); ++c) {
    const std::size_t n = sp.dim(c);
    if (n == 0) continue;
    ExactMatrix b(n, n, spec.field());
    do {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = CycloNum(spec.field(), dist(rng));
    } while (rank(b) < n);
    p.set_block(sp.offset(c), sp.offset(c), b);
  }
  return change_basis(rep, p);
}

bool representations_equal(const GRepresentation& a, const GRepresentation& b) {
  if (!(a.spec() == b.spec()) || !(a.space() == b.space())) return false;
  for (const auto& [k, m] : a.actions())
    if (!(b.act(k) == m)) return false;
  for (const auto& [k, m] : b.actions())
    if (!(a.act(k) == m)) return false;
  return true;
}

}  // namespace qtl
