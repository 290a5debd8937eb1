#include "qtl/liealg.hpp"

#include "qtl/errors.hpp"
#include "qtl/matrix.hpp"

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

DElement bracket_keys(const TorusSpec& spec, const DKey& a, const DKey& b) {
  using K = DKey::Kind;
  DElement out;
  if (a.kind == K::Deriv && b.kind == K::Deriv) {
    // [t^m d_i, t^n d_j] = n_i t^{m+n} d_j - m_j t^{m+n} d_i
    const ExpVec mn = a.exp + b.exp;
    out.add(DKey::deriv(b.index, mn), CycloNum(static_cast<long>(b.exp[a.index])));
    out.add(DKey::deriv(a.index, mn), CycloNum(static_cast<long>(-a.exp[b.index])));
    return out;
  }
  if (a.kind == K::Deriv && b.kind != K::Deriv) {
    // t^m d_i applied to t^s gives s_i t^{m+s}; sigma_hat(m, s) = 1 for m in R.
    const long c = static_cast<long>(b.exp[a.index]);
    out.add(b.kind == K::Inner ? DKey::inner(a.exp + b.exp) : DKey::central(a.exp + b.exp), CycloNum(c));
    return out;
  }
  if (b.kind == K::Deriv) return -bracket_keys(spec, b, a);
  if (a.kind == K::Inner && b.kind == K::Inner) {
    const CycloNum c = sigma_commutator(spec, a.exp, b.exp);
    const ExpVec rs = a.exp + b.exp;
    if (in_R(spec, rs)) {
      if (!c.is_zero())
        throw Error("bracket_D: nonzero commutator coefficient for central r+s=" + rs.to_string());
      return out;
    }
    out.add(DKey::inner(rs), c);
    return out;
  }
  // Z is central among inner derivations and commutes with itself.
  return out;
}

}  // namespace

std::string to_string(const DKey& k) {
  switch (k.kind) {
    case DKey::Kind::Deriv:
      return "D(" + std::to_string(k.index + 1) + ";" + coords(k.exp) + ")";
    case DKey::Kind::Inner:
      return "T(" + coords(k.exp) + ")";
    case DKey::Kind::Central:
      return "Z(" + coords(k.exp) + ")";
  }
  return {};
}

std::string to_string(const WKey& k) { return "W(" + std::to_string(k.index + 1) + ";" + coords(k.exp) + ")"; }

std::string to_string(const DElement& a) {
  return a.to_string([](const DKey& k) { return to_string(k); });
}
std::string to_string(const WdElement& a) {
  return a.to_string([](const WKey& k) { return to_string(k); });
}

DElement d_partial(const std::vector<CycloNum>& u, const ExpVec& m) {
  DElement out;
  for (std::size_t i = 0; i < u.size(); ++i) out.add(DKey::deriv(static_cast<int>(i), m), u[i]);
  return out;
}

void validate_key(const TorusSpec& spec, const DKey& k) {
  const auto d = static_cast<std::size_t>(spec.rank());
  if (k.exp.size() != d) throw MalformedBasisKey(to_string(k) + ": exponent length != " + std::to_string(d));
  switch (k.kind) {
    case DKey::Kind::Deriv:
      if (k.index < 0 || k.index >= spec.rank()) throw MalformedBasisKey(to_string(k) + ": index out of range");
      if (!in_R(spec, k.exp)) throw MalformedBasisKey(to_string(k) + ": exponent not in R");
      break;
    case DKey::Kind::Inner:
      if (in_R(spec, k.exp)) throw MalformedBasisKey(to_string(k) + ": inner exponent lies in R");
      break;
    case DKey::Kind::Central:
      if (!in_R(spec, k.exp)) throw MalformedBasisKey(to_string(k) + ": central exponent not in R");
      break;
  }
}

DElement bracket_D(const TorusSpec& spec, const DElement& a, const DElement& b) {
  for (const auto& [k, c] : a) validate_key(spec, k);
  for (const auto& [k, c] : b) validate_key(spec, k);
  DElement out;
  for (const auto& [ka, ca] : a)
    for (const auto& [kb, cb] : b) out.add(bracket_keys(spec, ka, kb), ca * cb);
  return out;
}

WdElement bracket_Wd(const WdElement& a, const WdElement& b) {
  WdElement out;
  for (const auto& [ka, ca] : a) {
    for (const auto& [kb, cb] : b) {
      const CycloNum c = ca * cb;
      const ExpVec mn = ka.exp + kb.exp;
      out.add(WKey{kb.index, mn}, c * CycloNum(static_cast<long>(kb.exp[ka.index])));
      out.add(WKey{ka.index, mn}, c * CycloNum(static_cast<long>(-ka.exp[kb.index])));
    }
  }
  return out;
}

WdElement dR_to_Wd(const TorusSpec& spec, const DElement& a) {
  WdElement out;
  for (const auto& [k, c] : a) {
    if (k.kind != DKey::Kind::Deriv || !in_R(spec, k.exp))
      throw ExponentNotInR(to_string(k) + " is not in D_R");
    ExpVec n(k.exp.size());
    for (std::size_t i = 0; i < n.size(); ++i) n[i] = k.exp[i] / spec.b_entry(i);
    out.add(WKey{k.index, n}, c * CycloNum(static_cast<long>(spec.b_entry(static_cast<std::size_t>(k.index)))));
  }
  return out;
}

bool is_generic(const std::vector<CycloNum>& mu) {
  if (mu.empty()) return true;
  const CycloField* f = &CycloField::get(1);
  for (const auto& x : mu)
    if (x.field().degree() > f->degree()) f = &x.field();
  const auto& q = CycloField::get(1);
  RowReducer rr(static_cast<std::size_t>(f->degree()), q);
  for (const auto& x : mu) {
    const CycloNum lifted = x + CycloNum(*f, 0);
    std::vector<CycloNum> row;
    for (const auto& c : lifted.coeffs()) row.emplace_back(c);
    if (!rr.add(std::move(row))) return false;
  }
  return true;
}

namespace {

// Checks that the Deriv part of `e` is, exponent by exponent, a multiple of
// sum_i mu_i t^m d_i, and that nothing central appears.
std::optional<std::string> outside_g_mu(const DElement& e, const std::vector<CycloNum>& mu) {
  std::map<ExpVec, std::vector<CycloNum>> by_exp;
  for (const auto& [k, c] : e) {
    if (k.kind == DKey::Kind::Central) return "central term " + to_string(k);
    if (k.kind != DKey::Kind::Deriv) continue;
    auto& v = by_exp[k.exp];
    v.resize(mu.size(), CycloNum(0));
    v[static_cast<std::size_t>(k.index)] = c;
  }
  for (const auto& [m, v] : by_exp) {
    std::size_t piv = 0;
    while (mu[piv].is_zero()) ++piv;
    const CycloNum s = v[piv] / mu[piv];
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (!(v[i] == s * mu[i])) return "exponent " + m.to_string() + " not proportional to mu";
  }
  return std::nullopt;
}

std::optional<std::string> outside_w_mu(const WdElement& e, const std::vector<CycloNum>& mu) {
  std::map<ExpVec, std::vector<CycloNum>> by_exp;
  for (const auto& [k, c] : e) {
    auto& v = by_exp[k.exp];
    v.resize(mu.size(), CycloNum(0));
    v[static_cast<std::size_t>(k.index)] = c;
  }
  for (const auto& [m, v] : by_exp) {
    std::size_t piv = 0;
    while (mu[piv].is_zero()) ++piv;
    const CycloNum s = v[piv] / mu[piv];
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (!(v[i] == s * mu[i])) return "exponent " + m.to_string() + " not proportional to mu";
  }
  return std::nullopt;
}

}  // namespace

SpanReport solenoidal_span_check(const TorusSpec& spec, const SolenoidalSpec& sol, int box) {
  const auto d = static_cast<std::size_t>(spec.rank());
  if (sol.mu.size() != d) throw NotGeneric("mu has " + std::to_string(sol.mu.size()) + " entries, expected d");
  if (!is_generic(sol.mu)) throw NotGeneric("entries of mu are rationally dependent");
  const auto points = box_points(d, -box, box);
  SpanReport report;

  if (sol.flavor == SolenoidalSpec::Flavor::Commutative) {
    std::vector<WdElement> span;
    for (const auto& m : points) {
      WdElement e;
      for (std::size_t i = 0; i < d; ++i) e.add(WKey{static_cast<int>(i), m}, sol.mu[i]);
      span.push_back(std::move(e));
    }
    for (const auto& a : span)
      for (const auto& b : span) {
        ++report.pairs_checked;
        if (auto bad = outside_w_mu(bracket_Wd(a, b), sol.mu)) {
          report.closed = false;
          report.counterexample = *bad;
          return report;
        }
      }
    return report;
  }

  std::vector<DElement> span;
  for (const auto& m : points) {
    if (in_R(spec, m))
      span.push_back(d_partial(sol.mu, m));
    else
      span.emplace_back(DKey::inner(m));
  }
  for (const auto& a : span)
    for (const auto& b : span) {
      ++report.pairs_checked;
      if (auto bad = outside_g_mu(bracket_D(spec, a, b), sol.mu)) {
        report.closed = false;
        report.counterexample = to_string(a) + " , " + to_string(b) + ": " + *bad;
        return report;
      }
    }
  return report;
}

}  // namespace qtl
