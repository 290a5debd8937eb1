#include "qtl/cuspidal.hpp"

#include <numeric>
#include <random>

#include "qtl/errors.hpp"
#include "qtl/matrep.hpp"

namespace qtl {

namespace {

bool in_box(const ExpVec& s, int box) {
  for (auto x : s)
    if (x < -box || x > box) return false;
  return true;
}

ExpVec shift_of(const DKey& k) { return k.exp; }

// Offsets of the homogeneous components of a graded gl_N module.
std::vector<std::size_t> w_offsets(const TorusSpec& spec, const GradedGLNModule& w) {
  std::vector<std::size_t> off(spec.gamma0().size() + 1, 0);
  for (auto g : w.grading) ++off[g + 1];
  for (std::size_t i = 1; i < off.size(); ++i) off[i] += off[i - 1];
  return off;
}

}  // namespace

CuspidalModule::CuspidalModule(Kind kind, std::vector<CycloNum> alpha, GRepresentation rho,
                               std::optional<GLdGLNModule> vw, int box)
    : kind_(kind), alpha_(std::move(alpha)), rho_(std::move(rho)), vw_(std::move(vw)), box_(box) {
  if (alpha_.size() != static_cast<std::size_t>(rho_.spec().rank()))
    throw DimensionMismatch("alpha has length " + std::to_string(alpha_.size()));
}

void CuspidalModule::check_label(const ExpVec& s) const {
  if (s.size() != static_cast<std::size_t>(spec().rank())) throw DimensionMismatch("weight label " + s.to_string());
  if (!lazy_ && !in_box(s, box_))
    throw OutOfBox("weight " + s.to_string() + " outside [-" + std::to_string(box_) + ", " + std::to_string(box_) + "]");
}

std::size_t CuspidalModule::multiplicity(const ExpVec& s) const {
  return space().dim(spec().gamma0_index(canonical_rep(spec(), s)));
}

ExactMatrix CuspidalModule::act_from_rep(const DKey& k, const ExpVec& s, std::size_t w) const {
  const TorusSpec& sp = spec();
  const auto& g = sp.gamma0();
  const auto& space = rho_.space();
  const CycloField& f = sp.field();
  switch (k.kind) {
    case DKey::Kind::Central:
      return ExactMatrix::identity(space.dim(w), f);
    case DKey::Kind::Deriv: {
      const auto i = static_cast<std::size_t>(k.index);
      ExactMatrix out = (alpha_[i] + CycloNum(static_cast<long>(s[i]))) * ExactMatrix::identity(space.dim(w), f);
      for (const auto& [key, m] : rho_.actions()) {
        if (key.kind != GKey::Kind::XD || key.index != k.index) continue;
        const Rational c = exp_coefficient(k.exp, key.power);
        if (sgn(c) == 0) continue;
        out.add_scaled(CycloNum(c), m.block(space.offset(w), space.offset(w), space.dim(w), space.dim(w)));
      }
      return out;
    }
    case DKey::Kind::Inner: {
      const auto [m, r] = decompose(sp, k.exp);
      const std::size_t t = sp.gamma0_index(canonical_rep(sp, g[w] + r));
      ExactMatrix out(space.dim(t), space.dim(w), f);
      for (const auto& [key, x] : rho_.actions()) {
        if (key.kind != GKey::Kind::XT || key.cls != r) continue;
        const Rational c = exp_coefficient(m, key.power);
        if (sgn(c) == 0) continue;
        out.add_scaled(CycloNum(c), x.block(space.offset(t), space.offset(w), space.dim(t), space.dim(w)));
      }
      return out;
    }
  }
  throw Error("unreachable");
}

ExactMatrix CuspidalModule::act_tensor_field(const DKey& k, const ExpVec& s, std::size_t w) const {
  const TorusSpec& sp = spec();
  const CycloField& f = sp.field();
  const auto& v = vw_->v;
  const auto& wm = vw_->w;
  const auto off = w_offsets(sp, wm);
  const std::size_t dw = off[w + 1] - off[w];
  const std::size_t n = v.dim * dw;
  switch (k.kind) {
    case DKey::Kind::Central:
      return ExactMatrix::identity(n, f);
    case DKey::Kind::Deriv: {
      // (e_i | alpha + s) + sum_j m_j E_ji on V, identity on W.
      const auto d = static_cast<std::size_t>(sp.rank());
      const auto i = static_cast<std::size_t>(k.index);
      ExactMatrix gl(v.dim, v.dim, f);
      for (std::size_t j = 0; j < d; ++j)
        if (k.exp[j] != 0) gl.add_scaled(CycloNum(static_cast<long>(k.exp[j])), v.e[j * d + i]);
      ExactMatrix out = kronecker(gl, ExactMatrix::identity(dw, f));
      out += (alpha_[i] + CycloNum(static_cast<long>(s[i]))) * ExactMatrix::identity(n, f);
      return out;
    }
    case DKey::Kind::Inner: {
      const ExpVec r = canonical_rep(sp, k.exp);
      const std::size_t t = sp.gamma0_index(canonical_rep(sp, sp.gamma0()[w] + r));
      const std::size_t dt = off[t + 1] - off[t];
      const ExactMatrix x = wm.x[sp.gamma0_index(r)].block(off[t], off[w], dt, dw);
      return kronecker(ExactMatrix::identity(v.dim, f), x);
    }
  }
  throw Error("unreachable");
}

std::pair<ExpVec, ExactMatrix> CuspidalModule::act(const DKey& symbol, const ExpVec& s) const {
  check_label(s);
  validate_key(spec(), symbol);
  const std::size_t w = spec().gamma0_index(canonical_rep(spec(), s));
  ExpVec target = s + shift_of(symbol);
  if (kind_ == Kind::TensorField) return {std::move(target), act_tensor_field(symbol, s, w)};
  return {std::move(target), act_from_rep(symbol, s, w)};
}

std::pair<ExpVec, ExactMatrix> CuspidalModule::act(const DElement& a, const ExpVec& s) const {
  check_label(s);
  std::optional<ExpVec> shift;
  for (const auto& [k, c] : a) {
    if (shift && *shift != k.exp) throw Error("element is not homogeneous: " + to_string(a));
    shift = k.exp;
  }
  if (!shift) {
    const std::size_t n = multiplicity(s);
    return {s, ExactMatrix(n, n, spec().field())};
  }
  ExpVec target = s + *shift;
  ExactMatrix out(multiplicity(target), multiplicity(s), spec().field());
  for (const auto& [k, c] : a) out.add_scaled(c, act(k, s).second);
  return {std::move(target), std::move(out)};
}

WeightVector act_D(const CuspidalModule& m, const DKey& symbol, const WeightVector& v) {
  const ExpVec s = v.class_label + v.central_shift;
  auto [target, mat] = m.act(symbol, s);
  if (v.coords.size() != mat.cols()) throw DimensionMismatch("weight vector has the wrong length");
  const auto dec = decompose(m.spec(), target);
  return {dec.rep, dec.central, qtl::apply(mat, v.coords)};
}

CuspidalModule build_module(const std::vector<CycloNum>& alpha, const GRepresentation& rho, int box) {
  const auto report = verify_representation(rho, std::max(rho.cutoff() - 1, 0));
  if (!report.pass) throw InvalidRepresentation(report.failure.value_or("relation check failed"));
  return CuspidalModule(CuspidalModule::Kind::FromRepresentation, alpha, rho, std::nullopt, box);
}

CuspidalModule tensor_field_module(const TorusSpec& spec, const std::vector<CycloNum>& alpha,
                                   const GLdGLNModule& vw, int box) {
  validate(spec, vw);
  // The representation is kept for the grading and for comparisons; the
  // action itself is computed from V and W.
  return CuspidalModule(CuspidalModule::Kind::TensorField, alpha, pullback(spec, vw), vw, box);
}

std::vector<DKey> symbols_in_box(const TorusSpec& spec, int radius) {
  std::vector<DKey> out;
  for (const auto& m : box_points(static_cast<std::size_t>(spec.rank()), -radius, radius)) {
    if (in_R(spec, m)) {
      for (int i = 0; i < spec.rank(); ++i) out.push_back(DKey::deriv(i, m));
      out.push_back(DKey::central(m));
    } else {
      out.push_back(DKey::inner(m));
    }
  }
  return out;
}

ModuleCheckReport verify_module_axioms(const CuspidalModule& m, int symbol_box, std::size_t sample_count,
                                       std::uint64_t seed, Execution exec) {
  const TorusSpec& spec = m.spec();
  const auto symbols = symbols_in_box(spec, symbol_box);
  const auto labels = box_points(static_cast<std::size_t>(spec.rank()), -m.box(), m.box());
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, symbols.size() - 1);
  std::vector<std::pair<DKey, DKey>> pairs;
  for (std::size_t i = 0; i < sample_count; ++i) {
    const auto a = pick(rng);
    const auto b = pick(rng);
    pairs.emplace_back(symbols[a], symbols[b]);
  }
  // The Z-associativity checks ride along as extra cases.
  std::vector<std::pair<ExpVec, ExpVec>> central;
  for (const auto& k : symbols)
    if (k.kind == DKey::Kind::Central)
      for (const auto& l : symbols)
        if (l.kind == DKey::Kind::Central) central.emplace_back(k.exp, l.exp);

  ModuleCheckReport report;
  auto fail = first_failure(pairs.size() + central.size(), exec, [&](std::size_t idx) -> std::optional<std::string> {
    for (const auto& s : labels) {
      if (idx < pairs.size()) {
        const auto& [a, b] = pairs[idx];
        const DElement br = bracket_D(spec, DElement(a), DElement(b));
        const ExpVec target = s + a.exp + b.exp;
        ExactMatrix lhs(m.multiplicity(target), m.multiplicity(s), spec.field());
        if (!br.is_zero()) lhs = m.act(br, s).second;
        const ExactMatrix rhs = m.act(a, s + b.exp).second * m.act(b, s).second -
                                m.act(b, s + a.exp).second * m.act(a, s).second;
        if (!(lhs == rhs)) return "[" + to_string(a) + ", " + to_string(b) + "] at weight " + s.to_string();
      } else {
        const auto& [p, q] = central[idx - pairs.size()];
        const ExactMatrix lhs = m.act(DKey::central(p), s + q).second * m.act(DKey::central(q), s).second;
        if (!(lhs == m.act(DKey::central(p + q), s).second))
          return "t^" + p.to_string() + " t^" + q.to_string() + " at weight " + s.to_string();
      }
    }
    return std::nullopt;
  });
  report.pairs_checked = pairs.size() + central.size();
  report.vectors_checked = report.pairs_checked * labels.size();
  if (fail) {
    report.pass = false;
    report.counterexample = std::move(fail);
  }
  return report;
}

bool modules_equal_on_box(const CuspidalModule& a, const CuspidalModule& b, int box, int symbol_box) {
  if (!(a.spec() == b.spec())) return false;
  if (!(a.space() == b.space())) throw DimensionMismatch("modules have different weight multiplicities");
  for (std::size_t i = 0; i < a.alpha().size(); ++i)
    if (!(a.alpha()[i] == b.alpha()[i])) return false;
  const auto labels = box_points(static_cast<std::size_t>(a.spec().rank()), -box, box);
  for (const auto& k : symbols_in_box(a.spec(), symbol_box))
    for (const auto& s : labels)
      if (!(a.act(k, s).second == b.act(k, s).second)) return false;
  return true;
}

MultiplicityReport weight_multiplicities(const CuspidalModule& m, int box) {
  MultiplicityReport out;
  std::optional<std::size_t> first;
  for (const auto& s : box_points(static_cast<std::size_t>(m.spec().rank()), -box, box)) {
    const std::size_t k = m.multiplicity(s);
    out.multiplicity.emplace(s, k);
    out.bound = std::max(out.bound, k);
    if (first && *first != k) out.uniform = false;
    first = k;
  }
  return out;
}

OperatorFamily operator_family(const CuspidalModule& m, int degree_bound) {
  OperatorFamily fam;
  fam.space = m.space();
  fam.degree_bound = degree_bound;
  const CuspidalModule* mod = &m;
  fam.d = [mod](int u, const ExpVec& n) {
    const TorusSpec& spec = mod->spec();
    const auto& sp = mod->space();
    ExactMatrix out(sp.total(), sp.total(), spec.field());
    for (std::size_t w = 0; w < sp.classes(); ++w) {
      if (sp.dim(w) == 0) continue;
      const ExpVec& s = spec.gamma0()[w];
      auto [t, a] = mod->act(DKey::deriv(u, n), s);
      auto [t2, back] = mod->act(DKey::central(-n), t);
      out.set_block(sp.offset(w), sp.offset(w), back * a);
    }
    return out;
  };
  fam.l = [mod](const ExpVec& n, const ExpVec& r) {
    const TorusSpec& spec = mod->spec();
    const auto& sp = mod->space();
    ExactMatrix out(sp.total(), sp.total(), spec.field());
    const ExpVec nr = n + r;
    const DKey first = in_R(spec, nr) ? DKey::central(nr) : DKey::inner(nr);
    for (std::size_t w = 0; w < sp.classes(); ++w) {
      if (sp.dim(w) == 0) continue;
      const ExpVec& s = spec.gamma0()[w];
      auto [t1, a] = mod->act(first, s);
      auto [t2, b] = mod->act(DKey::central(-n), t1);
      const ExpVec v = canonical_rep(spec, t2);
      auto [t3, c] = mod->act(DKey::central(v - t2), t2);
      const std::size_t ti = spec.gamma0_index(v);
      out.set_block(sp.offset(ti), sp.offset(w), c * b * a);
    }
    return out;
  };
  return fam;
}

namespace {

// Signed Stirling numbers of the first kind s(n, k) for n, k <= top.
std::vector<std::vector<Rational>> stirling_first(int top) {
  std::vector<std::vector<Rational>> s(static_cast<std::size_t>(top + 1),
                                       std::vector<Rational>(static_cast<std::size_t>(top + 1), 0));
  s[0][0] = 1;
  for (int n = 0; n < top; ++n)
    for (int k = 1; k <= n + 1; ++k)
      s[n + 1][k] = s[n][k - 1] - Rational(n) * s[n][k];
  return s;
}

Rational binomial(int n, int k) {
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(out);
}

Rational factorial(std::int64_t n) {
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return Rational(out);
}

bool dominated(const ExpVec& a, const ExpVec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Monomial coefficients a_j with F(c) = sum_j a_j c^j, c in [0, D]^d.
std::map<ExpVec, ExactMatrix> interpolate(const std::map<ExpVec, ExactMatrix>& values, std::size_t d, int top,
                                          const CycloField& f) {
  const auto grid = box_points(d, 0, top);
  const auto st = stirling_first(top);
  std::map<ExpVec, ExactMatrix> diff;
  for (const auto& k : grid) {
    ExactMatrix acc;
    bool first = true;
    for (const auto& j : grid) {
      if (!dominated(j, k)) continue;
      Rational w = 1;
      for (std::size_t i = 0; i < d; ++i) {
        w *= binomial(static_cast<int>(k[i]), static_cast<int>(j[i]));
        if ((k[i] - j[i]) % 2) w = -w;
      }
      if (first) {
        acc = ExactMatrix(values.at(j).rows(), values.at(j).cols(), f);
        first = false;
      }
      acc.add_scaled(CycloNum(f, w), values.at(j));
    }
    diff.emplace(k, std::move(acc));
  }
  std::map<ExpVec, ExactMatrix> out;
  for (const auto& j : grid) {
    ExactMatrix acc(diff.begin()->second.rows(), diff.begin()->second.cols(), f);
    for (const auto& k : grid) {
      if (!dominated(j, k)) continue;
      Rational w = 1;
      for (std::size_t i = 0; i < d; ++i)
        w *= st[static_cast<std::size_t>(k[i])][static_cast<std::size_t>(j[i])] / factorial(k[i]);
      if (sgn(w) != 0) acc.add_scaled(CycloNum(f, w), diff.at(k));
    }
    if (!acc.is_zero()) out.emplace(j, std::move(acc));
  }
  return out;
}

ExactMatrix evaluate_at(const std::map<ExpVec, ExactMatrix>& coeffs, const ExpVec& c, std::size_t rows, std::size_t cols,
                        const CycloField& f) {
  ExactMatrix out(rows, cols, f);
  for (const auto& [j, a] : coeffs) {
    mpz_class w = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      mpz_class p;
      mpz_pow_ui(p.get_mpz_t(), mpz_class(static_cast<long>(c[i])).get_mpz_t(), static_cast<unsigned long>(j[i]));
      w *= p;
    }
    out.add_scaled(CycloNum(f, Rational(w)), a);
  }
  return out;
}

ExpVec scale_by_b(const TorusSpec& spec, const ExpVec& c) {
  ExpVec m = c;
  for (std::size_t i = 0; i < m.size(); ++i) m[i] *= spec.b_entry(i);
  return m;
}

// f = p! a_p / B^p for every surviving coefficient, checking the total degree.
std::map<ExpVec, ExactMatrix> to_taylor(const TorusSpec& spec, const std::map<ExpVec, ExactMatrix>& mono, int top,
                                        const std::string& what) {
  std::map<ExpVec, ExactMatrix> out;
  for (const auto& [p, a] : mono) {
    if (p.total() > top)
      throw DegreeBoundViolated(what + " has a term of degree " + std::to_string(p.total()) + " above the bound " +
                                std::to_string(top));
    Rational w = 1;
    for (std::size_t i = 0; i < p.size(); ++i) {
      mpz_class bp;
      mpz_pow_ui(bp.get_mpz_t(), mpz_class(static_cast<long>(spec.b_entry(i))).get_mpz_t(),
                 static_cast<unsigned long>(p[i]));
      w *= factorial(p[i]) / Rational(bp);
    }
    out.emplace(p, CycloNum(spec.field(), w) * a);
  }
  return out;
}

}  // namespace

PolynomialCoefficients extract_coefficients(const OperatorFamily& family, const TorusSpec& spec,
                                            const std::vector<CycloNum>& alpha, bool out_of_grid_check) {
  const auto d = static_cast<std::size_t>(spec.rank());
  const int top = family.degree_bound;
  const CycloField& f = spec.field();
  const auto& sp = family.space;
  const std::size_t n = sp.total();
  const auto grid = box_points(d, 0, top);
  PolynomialCoefficients out{spec, sp, {}, {}};

  // Points outside the grid where the interpolant must still agree.
  std::vector<ExpVec> probes;
  if (out_of_grid_check) {
    ExpVec hi(d), lo(d);
    for (std::size_t i = 0; i < d; ++i) {
      hi[i] = top + 1;
      lo[i] = -1;
    }
    probes = {hi, lo};
  }

  auto run = [&](const std::function<ExactMatrix(const ExpVec&)>& eval, const std::string& what) {
    std::map<ExpVec, ExactMatrix> values;
    for (const auto& c : grid) values.emplace(c, eval(scale_by_b(spec, c)));
    auto mono = interpolate(values, d, top, f);
    for (const auto& c : probes)
      if (!(evaluate_at(mono, c, n, n, f) == eval(scale_by_b(spec, c))))
        throw DegreeBoundViolated(what + " is not a polynomial of degree <= " + std::to_string(top) +
                                  " (fails at m = " + scale_by_b(spec, c).to_string() + ")");
    return to_taylor(spec, mono, top, what);
  };

  for (std::size_t u = 0; u < d; ++u) {
    const int ui = static_cast<int>(u);
    auto coeffs = run([&](const ExpVec& m) { return family.d(ui, m); }, "D(" + std::to_string(u + 1) + ", m)");
    // f(u, 0) on U_w must be (u | alpha + w) Id.
    ExactMatrix expect(n, n, f);
    for (std::size_t w = 0; w < sp.classes(); ++w)
      for (std::size_t i = 0; i < sp.dim(w); ++i)
        expect(sp.offset(w) + i, sp.offset(w) + i) =
            alpha[u] + CycloNum(static_cast<long>(spec.gamma0()[w][u]));
    const auto it = coeffs.find(ExpVec(d));
    const ExactMatrix zero(n, n, f);
    if (!((it == coeffs.end() ? zero : it->second) == expect))
      throw ConstantTermMismatch("f(" + std::to_string(u + 1) + ", 0) is not (u | alpha + w) Id");
    for (auto& [p, a] : coeffs) out.f.emplace(std::make_pair(ui, p), std::move(a));
  }
  for (const auto& r : spec.gamma0()) {
    auto coeffs = run([&](const ExpVec& m) { return family.l(m, r); }, "L(m, " + r.to_string() + ")");
    for (auto& [p, a] : coeffs) out.g.emplace(std::make_pair(r, p), std::move(a));
  }
  return out;
}

GRepresentation coefficients_to_representation(const PolynomialCoefficients& coeffs) {
  int top = 0;
  for (const auto& [key, a] : coeffs.f) top = std::max(top, static_cast<int>(key.second.total()) - 1);
  for (const auto& [key, a] : coeffs.g) top = std::max(top, static_cast<int>(key.second.total()));
  GRepresentation rep(coeffs.spec, coeffs.space, top + 1);
  // f(u, 0) is the weight, not a generator.
  for (const auto& [key, a] : coeffs.f)
    if (key.second.total() >= 1) rep.set(GKey::xd(key.second, key.first), a);
  for (const auto& [key, a] : coeffs.g) rep.set(GKey::xt(key.second, key.first), a);
  if (auto bad = rep.block_violation()) throw RelationViolated(to_string(*bad) + " does not respect the grading");
  const auto report = verify_representation(rep, top);
  if (!report.pass) throw RelationViolated(report.failure.value_or("relation check failed"));
  return rep;
}

RelationReport verify_operator_relations(const OperatorFamily& family, const TorusSpec& spec, int box,
                                         std::size_t sample_count, std::uint64_t seed) {
  const auto d = static_cast<std::size_t>(spec.rank());
  const auto& sp = family.space;
  const std::size_t n = sp.total();
  const CycloField& f = spec.field();
  const auto& g = spec.gamma0();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-box, box);
  std::uniform_int_distribution<std::size_t> unit(0, d - 1), cls(0, g.size() - 1);
  auto random_r = [&] {
    ExpVec c(d);
    for (std::size_t i = 0; i < d; ++i) c[i] = coord(rng);
    return scale_by_b(spec, c);
  };
  auto num = [](std::int64_t x) { return CycloNum(static_cast<long>(x)); };

  RelationReport report;
  for (std::size_t it = 0; it < sample_count; ++it) {
    const auto u = unit(rng), v = unit(rng);
    const ExpVec m = random_r(), nn = random_r();
    const ExpVec& r = g[cls(rng)];
    const ExpVec& s = g[cls(rng)];
    const int ui = static_cast<int>(u), vi = static_cast<int>(v);

    const ExactMatrix du = family.d(ui, m), dv = family.d(vi, nn);
    ExactMatrix rhs1 = num(nn[u]) * (family.d(vi, m + nn) - dv);
    rhs1 -= num(m[v]) * (family.d(ui, m + nn) - du);
    ++report.checked;
    if (!(commutator(du, dv) == rhs1)) {
      report.pass = false;
      report.counterexample = "[D(" + std::to_string(u + 1) + "," + m.to_string() + "), D(" + std::to_string(v + 1) +
                              "," + nn.to_string() + ")]";
      return report;
    }

    const ExactMatrix ls = family.l(nn, s);
    ExactMatrix corr(n, n, f);
    for (std::size_t w = 0; w < sp.classes(); ++w) {
      const ExpVec c = g[w] + s - canonical_rep(spec, g[w] + s);
      for (std::size_t i = 0; i < sp.dim(w); ++i) corr(sp.offset(w) + i, sp.offset(w) + i) = num(c[u]);
    }
    ExactMatrix rhs2 = num(nn[u] + s[u]) * family.l(m + nn, s);
    rhs2 -= num(nn[u]) * ls;
    rhs2 -= ls * corr;
    ++report.checked;
    if (!(commutator(du, ls) == rhs2)) {
      report.pass = false;
      report.counterexample = "[D(" + std::to_string(u + 1) + "," + m.to_string() + "), L(" + nn.to_string() + "," +
                              s.to_string() + ")]";
      return report;
    }

    const ExactMatrix lr = family.l(m, r);
    const auto [e, rep] = decompose(spec, r + s);
    const CycloNum coef = sigma_commutator(spec, r, s);
    ExactMatrix rhs3(n, n, f);
    if (!coef.is_zero()) rhs3 = coef * family.l(m + nn + e, rep);
    ++report.checked;
    if (!(commutator(lr, ls) == rhs3)) {
      report.pass = false;
      report.counterexample = "[L(" + m.to_string() + "," + r.to_string() + "), L(" + nn.to_string() + "," +
                              s.to_string() + ")]";
      return report;
    }
  }
  return report;
}

IrreducibilityEvidence box_irreducibility_evidence(const CuspidalModule& m, int box, int symbol_box) {
  const TorusSpec& spec = m.spec();
  const CycloField& f = spec.field();
  const auto labels = box_points(static_cast<std::size_t>(spec.rank()), -box, box);
  std::map<ExpVec, std::size_t> label_index;
  for (std::size_t i = 0; i < labels.size(); ++i) label_index.emplace(labels[i], i);
  if (symbol_box < 0)
    for (auto b : spec.b_diagonal()) symbol_box = std::max(symbol_box, static_cast<int>(b));
  const auto symbols = symbols_in_box(spec, symbol_box);

  struct Edge {
    std::size_t from, to;
    ExactMatrix a;
  };
  std::vector<Edge> edges;
  for (const auto& k : symbols)
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto [t, a] = m.act(k, labels[i]);
      const auto it = label_index.find(t);
      if (it == label_index.end() || a.is_zero()) continue;
      edges.push_back({i, it->second, std::move(a)});
    }

  // Weight-preserving commutant: unknown blocks C_s with A C_s = C_t A on
  // every edge. Identity edges (the central t^n) force C_s = C_t, so their
  // labels share one block of unknowns.
  std::vector<std::size_t> mult(labels.size());
  for (std::size_t i = 0; i < labels.size(); ++i) mult[i] = m.multiplicity(labels[i]);
  std::vector<std::size_t> parent(labels.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : edges)
    if (e.a.rows() == e.a.cols() && e.a.is_identity()) parent[find(e.from)] = find(e.to);
  std::vector<std::size_t> var(labels.size(), 0);
  std::size_t nvars = 0;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (find(i) == i) {
      var[i] = nvars;
      nvars += mult[i] * mult[i];
    }
  for (std::size_t i = 0; i < labels.size(); ++i) var[i] = var[find(i)];

  RowReducer rr(nvars, f);
  // The identity always commutes, so rank nvars - 1 is final.
  for (const auto& e : edges) {
    if (nvars == 0 || rr.rank() + 1 >= nvars) break;
    if (find(e.from) == find(e.to) && e.a.rows() == e.a.cols() && e.a.is_identity()) continue;
    const std::size_t ns = mult[e.from], nt = mult[e.to];
    for (std::size_t i = 0; i < nt; ++i)
      for (std::size_t j = 0; j < ns; ++j) {
        std::vector<CycloNum> row(nvars, CycloNum(f, 0));
        bool any = false;
        for (std::size_t k = 0; k < ns; ++k)
          if (!e.a(i, k).is_zero()) {
            row[var[e.from] + k * ns + j] += e.a(i, k);
            any = true;
          }
        for (std::size_t k = 0; k < nt; ++k)
          if (!e.a(k, j).is_zero()) {
            row[var[e.to] + i * nt + k] -= e.a(k, j);
            any = true;
          }
        if (any) rr.add(std::move(row));
      }
  }
  IrreducibilityEvidence out;
  out.commutant_dim = nvars - rr.rank();

  // Cyclicity: the weight space at the centre c of the box generates
  // everything, and every basis vector generates all of M_c.
  std::vector<std::vector<const Edge*>> adj(labels.size());
  for (const auto& e : edges) adj[e.from].push_back(&e);
  const std::size_t centre = labels.size() / 2;
  auto spin = [&](std::vector<std::pair<std::size_t, std::vector<CycloNum>>> queue, bool stop_at_centre) {
    std::vector<RowReducer> span;
    for (std::size_t j = 0; j < labels.size(); ++j) span.emplace_back(mult[j], f);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      auto [at, vec] = std::move(queue[head]);
      if (span[at].rank() == mult[at] || !span[at].add(vec)) continue;
      if (stop_at_centre) {
        for (const Edge* e : adj[at])
          if (e->to == centre && span[centre].rank() < mult[centre]) span[centre].add(qtl::apply(e->a, vec));
        if (span[centre].rank() == mult[centre]) break;
      }
      for (const Edge* e : adj[at])
        if (span[e->to].rank() < mult[e->to]) queue.emplace_back(e->to, qtl::apply(e->a, vec));
    }
    return span;
  };
  auto unit = [&](std::size_t label, std::size_t b) {
    std::vector<CycloNum> v(mult[label], CycloNum(f, 0));
    v[b] = CycloNum(f, 1);
    return std::make_pair(label, std::move(v));
  };
  std::vector<std::pair<std::size_t, std::vector<CycloNum>>> seeds;
  for (std::size_t b = 0; b < mult[centre]; ++b) seeds.push_back(unit(centre, b));
  const auto whole = spin(seeds, false);
  for (std::size_t j = 0; j < labels.size() && out.cyclic; ++j)
    if (whole[j].rank() != mult[j]) {
      out.cyclic = false;
      out.non_cyclic_vector = "weight space " + labels[centre].to_string();
    }
  for (std::size_t i = 0; i < labels.size() && out.cyclic; ++i)
    for (std::size_t b = 0; b < mult[i] && out.cyclic; ++b) {
      const auto span = spin({unit(i, b)}, true);
      if (span[centre].rank() != mult[centre]) {
        out.cyclic = false;
        out.non_cyclic_vector = "basis vector " + std::to_string(b) + " of weight " + labels[i].to_string();
      }
    }
  return out;
}

}  // namespace qtl
