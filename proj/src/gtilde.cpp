#include "qtl/gtilde.hpp"

#include "qtl/errors.hpp"
#include "qtl/matrep.hpp"

namespace qtl {

namespace {

std::string coords(const ExpVec& e) {
  std::string s;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(e[i]);
  }
  return s;
}

}  // namespace

Rational exp_coefficient(const ExpVec& e, const ExpVec& c) {
  Rational out = 1;
  for (std::size_t i = 0; i < c.size(); ++i) {
    mpz_class pw, fact;
    mpz_pow_ui(pw.get_mpz_t(), mpz_class(static_cast<long>(e[i])).get_mpz_t(), static_cast<unsigned long>(c[i]));
    mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(c[i]));
    out *= Rational(pw, fact);
  }
  out.canonicalize();
  return out;
}

namespace {

void add_if(GTildeElement& out, GKey k, const CycloNum& c, int max_degree) {
  if (k.degree() <= max_degree) out.add(k, c);
}

}  // namespace

int GKey::degree() const { return static_cast<int>(power.total()) - (kind == Kind::XD ? 1 : 0); }

std::string to_string(const GKey& k) {
  if (k.kind == GKey::Kind::XD) return "XD(" + coords(k.power) + ";" + std::to_string(k.index + 1) + ")";
  return "XT(" + coords(k.power) + ";" + coords(k.cls) + ")";
}

std::string to_string(const GTildeElement& a) {
  return a.to_string([](const GKey& k) { return to_string(k); });
}

void validate_key(const TorusSpec& spec, const GKey& k) {
  const auto d = static_cast<std::size_t>(spec.rank());
  if (k.power.size() != d || !k.power.is_nonnegative())
    throw MalformedBasisKey(to_string(k) + ": power must lie in N^" + std::to_string(d));
  if (k.kind == GKey::Kind::XD) {
    if (k.power.total() < 1) throw MalformedBasisKey(to_string(k) + ": XD needs |p| >= 1");
    if (k.index < 0 || k.index >= spec.rank()) throw MalformedBasisKey(to_string(k) + ": index out of range");
  } else {
    if (k.cls.size() != d) throw MalformedBasisKey(to_string(k) + ": class has wrong length");
    spec.gamma0_index(k.cls);
  }
}

GTildeElement bracket_G_keys(const TorusSpec& spec, const GKey& a, const GKey& b, int max_degree) {
  using K = GKey::Kind;
  GTildeElement out;
  if (a.kind == K::XD && b.kind == K::XD) {
    const auto i = static_cast<std::size_t>(a.index), j = static_cast<std::size_t>(b.index);
    const ExpVec mn = a.power + b.power;
    const auto d = mn.size();
    if (b.power[i] != 0)
      add_if(out, GKey::xd(mn - ExpVec::unit(d, i), b.index), CycloNum(static_cast<long>(b.power[i])), max_degree);
    if (a.power[j] != 0)
      add_if(out, GKey::xd(mn - ExpVec::unit(d, j), a.index), CycloNum(static_cast<long>(-a.power[j])), max_degree);
    return out;
  }
  if (a.kind == K::XD && b.kind == K::XT) {
    const auto i = static_cast<std::size_t>(a.index);
    const ExpVec ml = a.power + b.power;
    if (b.power[i] != 0)
      add_if(out, GKey::xt(ml - ExpVec::unit(ml.size(), i), b.cls), CycloNum(static_cast<long>(b.power[i])),
             max_degree);
    if (b.cls[i] != 0) add_if(out, GKey::xt(ml, b.cls), CycloNum(static_cast<long>(b.cls[i])), max_degree);
    return out;
  }
  if (a.kind == K::XT && b.kind == K::XD) return -bracket_G_keys(spec, b, a, max_degree);

  const CycloNum c = sigma_commutator(spec, a.cls, b.cls);
  if (c.is_zero()) return out;
  const ExpVec rs = a.cls + b.cls;
  const auto [e, v] = decompose(spec, rs);
  const ExpVec pl = a.power + b.power;
  const auto d = pl.size();
  for (std::int64_t extra = 0; pl.total() + extra <= max_degree; ++extra) {
    for (const ExpVec& cc : compositions(d, extra)) {
      const Rational w = exp_coefficient(e, cc);
      if (sgn(w) != 0) out.add(GKey::xt(pl + cc, v), c * CycloNum(w));
    }
    // With e = 0 only the c = 0 term survives.
    if (e.is_zero()) break;
  }
  return out;
}

GTildeElement bracket_G(const TorusSpec& spec, const GTildeElement& a, const GTildeElement& b, int max_degree) {
  for (const auto& [k, c] : a) validate_key(spec, k);
  for (const auto& [k, c] : b) validate_key(spec, k);
  GTildeElement out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out.add(bracket_G_keys(spec, ka, kb, max_degree), ca * cb);
  return out;
}

std::optional<ExpVec> gamma_degree(const TorusSpec& spec, const GTildeElement& a) {
  std::optional<ExpVec> cls;
  for (const auto& [k, c] : a) {
    const ExpVec& w = k.kind == GKey::Kind::XD ? spec.central_class() : k.cls;
    if (cls && *cls != w) return std::nullopt;
    cls = w;
  }
  return cls ? cls : std::optional<ExpVec>(spec.central_class());
}

int filtration_degree(const GTildeElement& a) {
  int deg = INT_MAX;
  for (const auto& [k, c] : a) deg = std::min(deg, k.degree());
  return deg;
}

std::vector<GKey> gtilde_x_basis(const TorusSpec& spec, int n) {
  std::vector<GKey> out;
  if (n < 0) return out;
  for (const auto& p : compositions(static_cast<std::size_t>(spec.rank()), n + 1))
    for (int j = 0; j < spec.rank(); ++j) out.push_back(GKey::xd(p, j));
  return out;
}

std::vector<GKey> gtilde_basis(const TorusSpec& spec, int n) {
  std::vector<GKey> out = gtilde_x_basis(spec, n);
  if (n < 0) return out;
  for (const auto& l : compositions(static_cast<std::size_t>(spec.rank()), n))
    for (const auto& w : spec.gamma0()) out.push_back(GKey::xt(l, w));
  return out;
}

std::pair<ExactMatrix, ExactMatrix> project_quotient(const TorusSpec& spec, const GTildeElement& a) {
  const auto d = static_cast<std::size_t>(spec.rank());
  const auto n = static_cast<std::size_t>(spec.matrix_size());
  ExactMatrix gld(d, d, spec.field()), gln(n, n, spec.field());
  for (const auto& [k, c] : a) {
    if (k.degree() != 0) continue;
    if (k.kind == GKey::Kind::XD) {
      std::size_t i = 0;
      while (k.power[i] == 0) ++i;
      gld(i, static_cast<std::size_t>(k.index)) += c;
    } else {
      gln.add_scaled(c, x_power(spec, k.cls));
    }
  }
  return {gld, gln};
}

std::vector<CommutatorSpanLevel> commutator_span_report(const TorusSpec& spec, int max_degree) {
  std::vector<CommutatorSpanLevel> out;
  for (int n = 0; n <= max_degree; ++n) {
    const auto target = gtilde_x_basis(spec, n);
    std::map<GKey, std::size_t> pos;
    for (std::size_t i = 0; i < target.size(); ++i) pos.emplace(target[i], i);
    RowReducer rr(target.size(), spec.field());
    for (int i = 0; 2 * i <= n; ++i) {
      const auto left = gtilde_x_basis(spec, i);
      const auto right = gtilde_x_basis(spec, n - i);
      for (const auto& a : left) {
        for (const auto& b : right) {
          if (rr.rank() == target.size()) break;
          const auto br = bracket_G_keys(spec, a, b, n);
          std::vector<CycloNum> v(target.size(), CycloNum(0));
          for (const auto& [k, c] : br) v[pos.at(k)] = c;
          rr.add(std::move(v));
        }
      }
    }
    out.push_back({n, rr.rank(), target.size()});
  }
  return out;
}

}  // namespace qtl
