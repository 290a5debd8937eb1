#include "qtl/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <set>

#include "qtl/cuspidal.hpp"
#include "qtl/errors.hpp"
#include "qtl/liealg.hpp"
#include "qtl/matrep.hpp"
#include "qtl/repn.hpp"

namespace qtl {

namespace {

std::vector<CycloNum> zero_alpha(const TorusSpec& spec) {
  return std::vector<CycloNum>(static_cast<std::size_t>(spec.rank()), CycloNum(0));
}

ExpVec random_exp(std::mt19937_64& rng, std::size_t d, int radius) {
  std::uniform_int_distribution<int> c(-radius, radius);
  ExpVec e(d);
  for (std::size_t i = 0; i < d; ++i) e[i] = c(rng);
  return e;
}

DKey random_dkey(std::mt19937_64& rng, const TorusSpec& spec, int radius) {
  const auto d = static_cast<std::size_t>(spec.rank());
  const ExpVec e = random_exp(rng, d, radius);
  if (!in_R(spec, e)) return DKey::inner(e);
  std::uniform_int_distribution<int> pick(0, spec.rank());
  const int i = pick(rng);
  return i == spec.rank() ? DKey::central(e) : DKey::deriv(i, e);
}

WKey random_wkey(std::mt19937_64& rng, std::size_t d, int radius) {
  std::uniform_int_distribution<int> pick(0, static_cast<int>(d) - 1);
  const int i = pick(rng);
  return WKey{i, random_exp(rng, d, radius)};
}

// m in R drawn as B c with c in [-radius, radius]^d.
ExpVec random_r(std::mt19937_64& rng, const TorusSpec& spec, int radius) {
  ExpVec c = random_exp(rng, static_cast<std::size_t>(spec.rank()), radius);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] *= spec.b_entry(i);
  return c;
}

void require(SuiteReport& r, bool ok, const std::string& what) {
  ++r.cases;
  if (!ok) r.failures.push_back(what);
}

void suite_xmatrix(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const int box = 2 * (spec.pairs() ? spec.orders()[0] : 1);
  const auto rep = verify_product_relation(
      spec, box, cfg.flip_sigma ? SigmaConvention::Flipped : SigmaConvention::Standard, cfg.exec);
  r.cases += rep.checked;
  if (rep.counterexample)
    r.failures.push_back("m=" + rep.counterexample->first.to_string() + " n=" + rep.counterexample->second.to_string());
}

void suite_xidentity(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  for (const auto& n : box_points(static_cast<std::size_t>(spec.rank()), -cfg.box, cfg.box))
    if (in_R(spec, n)) require(r, x_power(spec, n).is_identity(), "X^" + n.to_string() + " is not the identity");
  const std::size_t span = x_span_dimension(spec);
  require(r, span == static_cast<std::size_t>(spec.gamma_order()),
          "dim span{X^w} = " + std::to_string(span) + ", expected N^2 = " + std::to_string(spec.gamma_order()));
}

void suite_jacobi_d(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::array<DKey, 3>> triples;
  for (std::size_t i = 0; i < cfg.jacobi_samples; ++i)
    triples.push_back({random_dkey(rng, spec, 4), random_dkey(rng, spec, 4), random_dkey(rng, spec, 4)});
  auto fail = first_failure(triples.size(), cfg.exec, [&](std::size_t i) -> std::optional<std::string> {
    const auto& [a, b, c] = triples[i];
    const DElement ea(a), eb(b), ec(c);
    DElement j = bracket_D(spec, ea, bracket_D(spec, eb, ec));
    j += bracket_D(spec, eb, bracket_D(spec, ec, ea));
    j += bracket_D(spec, ec, bracket_D(spec, ea, eb));
    if (j.is_zero()) return std::nullopt;
    return to_string(a) + ", " + to_string(b) + ", " + to_string(c) + " -> " + to_string(j);
  });
  r.cases += triples.size();
  if (fail) r.failures.push_back(*fail);
}

void suite_jacobi_wd(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  const auto d = static_cast<std::size_t>(spec.rank());
  std::vector<std::array<WKey, 3>> triples;
  for (std::size_t i = 0; i < cfg.jacobi_samples; ++i)
    triples.push_back({random_wkey(rng, d, 4), random_wkey(rng, d, 4), random_wkey(rng, d, 4)});
  auto fail = first_failure(triples.size(), cfg.exec, [&](std::size_t i) -> std::optional<std::string> {
    const auto& [a, b, c] = triples[i];
    const WdElement ea(a), eb(b), ec(c);
    WdElement j = bracket_Wd(ea, bracket_Wd(eb, ec));
    j += bracket_Wd(eb, bracket_Wd(ec, ea));
    j += bracket_Wd(ec, bracket_Wd(ea, eb));
    if (j.is_zero()) return std::nullopt;
    return to_string(a) + ", " + to_string(b) + ", " + to_string(c) + " -> " + to_string(j);
  });
  r.cases += triples.size();
  if (fail) r.failures.push_back(*fail);
}

void suite_jacobi_gtilde(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const int truncation = 2 * cfg.gtilde_bound;
  StructureTable table;
  if (!cfg.cache_dir.empty()) {
    auto res = cache_structure_constants(spec, truncation, cfg.cache_dir);
    table = std::move(res.table);
  } else {
    table = compute_structure_constants(spec, truncation, cfg.exec);
  }
  r.notes.emplace_back("truncation_degree", std::to_string(truncation));
  r.notes.emplace_back("table_entries", std::to_string(table.entries.size()));
  const auto rep = jacobi_gtilde_exhaustive(spec, cfg.gtilde_bound, table, cfg.exec);
  r.cases += rep.triples;
  if (rep.counterexample) r.failures.push_back(*rep.counterexample);
}

void suite_homomorphism(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> coef(-3, 3);
  const auto d = static_cast<std::size_t>(spec.rank());
  auto random_elem = [&] {
    std::vector<CycloNum> u(d);
    bool nonzero = false;
    while (!nonzero)
      for (auto& x : u) {
        x = CycloNum(static_cast<long>(coef(rng)));
        nonzero = nonzero || !x.is_zero();
      }
    return d_partial(u, random_r(rng, spec, 2));
  };
  for (std::size_t i = 0; i < cfg.samples; ++i) {
    const DElement a = random_elem(), b = random_elem();
    const WdElement lhs = dR_to_Wd(spec, bracket_D(spec, a, b));
    const WdElement rhs = bracket_Wd(dR_to_Wd(spec, a), dR_to_Wd(spec, b));
    require(r, lhs == rhs, to_string(a) + " , " + to_string(b));
  }
}

void suite_quotient(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const auto deg0 = gtilde_basis(spec, 0);
  for (const auto& a : deg0)
    for (const auto& b : deg0) {
      const auto [gl_d, gl_n] = project_quotient(spec, bracket_G_keys(spec, a, b, 0));
      const auto [ad, an] = project_quotient(spec, GTildeElement(a));
      const auto [bd, bn] = project_quotient(spec, GTildeElement(b));
      require(r, gl_d == commutator(ad, bd) && gl_n == commutator(an, bn),
              "[" + to_string(a) + ", " + to_string(b) + "] does not project to the gl_d + gl_N bracket");
    }
  // The kernel contains G~_+, and G~_+ is an ideal.
  for (int n = 1; n <= cfg.degree; ++n)
    for (const auto& k : gtilde_basis(spec, n)) {
      const auto [pd, pn] = project_quotient(spec, GTildeElement(k));
      require(r, pd.is_zero() && pn.is_zero(), to_string(k) + " projects to a nonzero element");
      for (const auto& a : deg0) {
        const auto [qd, qn] = project_quotient(spec, bracket_G_keys(spec, a, k, cfg.degree));
        require(r, qd.is_zero() && qn.is_zero(), "[" + to_string(a) + ", " + to_string(k) + "] leaves G~_+");
      }
    }
}

void suite_theorem31(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const auto d = static_cast<std::size_t>(spec.rank());
  for (const auto& level : commutator_span_report(spec, cfg.degree)) {
    const std::size_t expect = level.degree == 0 ? d * d - 1 : level.full_dim;
    r.notes.emplace_back("span_degree_" + std::to_string(level.degree),
                         std::to_string(level.span_dim) + "/" + std::to_string(level.full_dim));
    require(r, level.span_dim == expect,
            "degree " + std::to_string(level.degree) + ": commutator span " + std::to_string(level.span_dim) +
                ", expected " + std::to_string(expect));
  }
  const GLdGLNModule vw = reference_vw(spec);
  for (const auto& [name, m] : {std::pair<std::string, GLdGLNModule>{"natural (x) regular", vw},
                                {"trivial (x) regular", GLdGLNModule{trivial_gld(spec), vw.w}}}) {
    const GRepresentation rho = pullback(spec, m);
    require(r, min_annihilation_degree(rho) == 1, name + ": annihilation degree is not 1");
    require(r, is_absolutely_irreducible(rho), name + ": commutant is not 1-dimensional");
    for (int n = 1; n <= cfg.degree; ++n)
      for (const auto& k : gtilde_basis(spec, n)) require(r, rho.act(k).is_zero(), name + ": " + to_string(k) + " acts");
  }
}

void suite_functor(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const auto m = build_module(zero_alpha(spec), pullback(spec, reference_vw(spec)), cfg.box);
  const auto rep = verify_module_axioms(m, cfg.box, cfg.samples, cfg.seed, cfg.exec);
  r.cases += rep.pairs_checked;
  r.notes.emplace_back("vectors_checked", std::to_string(rep.vectors_checked));
  if (rep.counterexample) r.failures.push_back(*rep.counterexample);
}

void suite_tensor_field(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const GLdGLNModule vw = reference_vw(spec);
  std::vector<CycloNum> shifted = zero_alpha(spec);
  for (std::size_t i = 0; i < shifted.size(); ++i) shifted[i] = CycloNum(Rational(1, static_cast<long>(i) + 2));
  for (const auto& alpha : {zero_alpha(spec), shifted}) {
    const auto a = build_module(alpha, pullback(spec, vw), cfg.box);
    const auto b = tensor_field_module(spec, alpha, vw, cfg.box);
    require(r, modules_equal_on_box(a, b, cfg.box, cfg.box), "functor image differs from F^alpha(V, W)");
    const auto ev = box_irreducibility_evidence(b, std::min(cfg.box, 2));
    require(r, ev.commutant_dim == 1, "box commutant has dimension " + std::to_string(ev.commutant_dim));
    require(r, ev.cyclic, ev.non_cyclic_vector.value_or("") + " is not cyclic");
  }
}

void suite_roundtrip(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const std::vector<std::pair<std::string, GRepresentation>> reps{
      {"pullback", pullback(spec, reference_vw(spec))}, {"jet(2)", jet_module(spec, 2)}};
  for (const auto& [name, rho] : reps) {
    const auto m = build_module(zero_alpha(spec), rho, cfg.box);
    const auto coeffs = extract_coefficients(operator_family(m, cfg.degree), spec, zero_alpha(spec));
    require(r, representations_equal(coefficients_to_representation(coeffs), rho),
            name + ": extracted coefficients do not reproduce rho");
  }
}

void suite_decompose(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const GLdGLNModule vw = reference_vw(spec);
  const GRepresentation scrambled = scramble(pullback(spec, vw), cfg.seed);
  require(r, commutant(scrambled).size() == 1, "scrambled module has a larger commutant");
  const auto dec = decompose_tensor(scrambled);
  r.notes.emplace_back("dims", std::to_string(dec.vw.v.dim) + "," + std::to_string(dec.vw.w.dim));
  require(r, dec.vw.v.dim == vw.v.dim && dec.vw.w.dim == vw.w.dim,
          "recovered dims (" + std::to_string(dec.vw.v.dim) + ", " + std::to_string(dec.vw.w.dim) + ")");
  const GRepresentation pb = pullback(spec, dec.vw);
  bool ok = rank(dec.iso) == scrambled.dim();
  for (const auto& k : pb.generators()) ok = ok && scrambled.act(k) * dec.iso == dec.iso * pb.act(k);
  require(r, ok, "recovered map is not an isomorphism of modules");
}

void suite_cuspidality(SuiteReport& r, const TorusSpec& spec, const RunConfig&) {
  const GLdGLNModule vw = reference_vw(spec);
  std::vector<std::size_t> wdims(spec.gamma0().size(), 0);
  for (auto g : vw.w.grading) ++wdims[g];
  const std::size_t wmax = *std::max_element(wdims.begin(), wdims.end());
  const auto m = build_module(zero_alpha(spec), pullback(spec, vw), 4);
  const auto rep = weight_multiplicities(m, 4);
  r.notes.emplace_back("bound", std::to_string(rep.bound));
  require(r, rep.uniform, "multiplicities are not uniform");
  require(r, rep.bound == vw.v.dim * wmax,
          "bound " + std::to_string(rep.bound) + ", expected " + std::to_string(vw.v.dim * wmax));
}

void suite_operator_relations(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  const std::vector<std::pair<std::string, GRepresentation>> reps{
      {"pullback", pullback(spec, reference_vw(spec))}, {"jet(2)", jet_module(spec, 2)}};
  for (const auto& [name, rho] : reps) {
    const auto m = build_module(zero_alpha(spec), rho, cfg.box);
    const auto rep = verify_operator_relations(operator_family(m, cfg.degree), spec, 2, cfg.samples, cfg.seed);
    r.cases += rep.checked;
    if (rep.counterexample) r.failures.push_back(name + ": " + *rep.counterexample);
  }
}

void suite_solenoidal(SuiteReport& r, const TorusSpec& spec, const RunConfig& cfg) {
  std::vector<CycloNum> mu;
  for (int i = 0; i < spec.rank(); ++i) mu.push_back(spec.root(i));
  if (!is_generic(mu)) {
    r.skipped = "Q(zeta_" + std::to_string(spec.field_order()) + ") has no generic vector of length " +
                std::to_string(spec.rank()) + " among roots of unity";
    return;
  }
  for (auto flavor : {SolenoidalSpec::Flavor::Commutative, SolenoidalSpec::Flavor::Quantum}) {
    const auto rep = solenoidal_span_check(spec, SolenoidalSpec{mu, flavor}, std::min(cfg.box, 2));
    r.cases += rep.pairs_checked;
    if (!rep.closed) r.failures.push_back(rep.counterexample.value_or("span not closed"));
  }
}

using SuiteFn = void (*)(SuiteReport&, const TorusSpec&, const RunConfig&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> r{
      {"xmatrix", suite_xmatrix},
      {"xidentity", suite_xidentity},
      {"jacobi-d", suite_jacobi_d},
      {"jacobi-wd", suite_jacobi_wd},
      {"jacobi-gtilde", suite_jacobi_gtilde},
      {"homomorphism", suite_homomorphism},
      {"quotient", suite_quotient},
      {"theorem31", suite_theorem31},
      {"functor", suite_functor},
      {"tensor-field", suite_tensor_field},
      {"roundtrip", suite_roundtrip},
      {"decompose", suite_decompose},
      {"cuspidality", suite_cuspidality},
      {"operator-relations", suite_operator_relations},
      {"solenoidal", suite_solenoidal},
  };
  return r;
}

}  // namespace

GLdGLNModule reference_vw(const TorusSpec& spec) { return {natural_gld(spec), graded_regular_glN(spec)}; }

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [n, f] : registry()) out.push_back(n);
    return out;
  }();
  return names;
}

SuiteReport run_suite(const std::string& name, const TorusSpec& spec, const RunConfig& cfg) {
  for (const auto& [n, fn] : registry()) {
    if (n != name) continue;
    SuiteReport r;
    r.name = name;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(r, spec, cfg);
    } catch (const Error& e) {
      r.failures.push_back(std::string("error: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
  }
  throw InvalidSpec("unknown suite '" + name + "'");
}

std::vector<SuiteReport> run_suites(const TorusSpec& spec, const RunConfig& cfg) {
  const auto& names = cfg.suites.empty() ? suite_names() : cfg.suites;
  for (const auto& n : names)
    if (std::find(suite_names().begin(), suite_names().end(), n) == suite_names().end())
      throw InvalidSpec("unknown suite '" + n + "'");
  std::vector<SuiteReport> out;
  for (const auto& n : names) out.push_back(run_suite(n, spec, cfg));
  return out;
}

io::Json report_json(const TorusSpec& spec, const RunConfig& cfg, const std::vector<SuiteReport>& reports) {
  io::Json j;
  j["spec"] = io::spec_to_json(spec);
  io::Json c;
  c["box"] = cfg.box;
  c["degree"] = cfg.degree;
  c["gtilde_bound"] = cfg.gtilde_bound;
  c["samples"] = cfg.samples;
  c["jacobi_samples"] = cfg.jacobi_samples;
  c["seed"] = cfg.seed;
  c["flip_sigma"] = cfg.flip_sigma;
  j["config"] = std::move(c);
  bool all = true;
  io::Json suites = io::Json::array();
  for (const auto& r : reports) {
    io::Json s;
    s["name"] = r.name;
    s["pass"] = r.pass();
    s["cases"] = r.cases;
    if (r.skipped) s["skipped"] = *r.skipped;
    io::Json notes = io::Json::object();
    for (const auto& [k, v] : r.notes) notes[k] = v;
    s["notes"] = std::move(notes);
    s["failures"] = r.failures;
    suites.push_back(std::move(s));
    all = all && r.pass();
  }
  j["suites"] = std::move(suites);
  j["pass"] = all;
  return j;
}

GTildeElement StructureTable::bracket(const GKey& a, const GKey& b) const {
  if (a == b) return {};
  const bool swap = b < a;
  const auto it = entries.find(swap ? std::make_pair(b, a) : std::make_pair(a, b));
  if (it == entries.end()) throw Error("structure table has no entry for " + to_string(a) + ", " + to_string(b));
  return swap ? -it->second : it->second;
}

GTildeElement StructureTable::bracket(const GKey& a, const GTildeElement& b) const {
  GTildeElement out;
  for (const auto& [k, c] : b) out.add(bracket(a, k), c);
  return out;
}

StructureTable compute_structure_constants(const TorusSpec& spec, int max_degree, Execution exec) {
  StructureTable t;
  t.max_degree = max_degree;
  for (int n = 0; n <= max_degree; ++n)
    for (const auto& k : gtilde_basis(spec, n)) t.basis.push_back(k);
  std::sort(t.basis.begin(), t.basis.end());
  const std::size_t n = t.basis.size();
  auto rows = parallel_map(n, exec, [&](std::size_t i) {
    std::vector<GTildeElement> row;
    for (std::size_t j = i + 1; j < n; ++j) row.push_back(bracket_G_keys(spec, t.basis[i], t.basis[j], max_degree));
    return row;
  });
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      t.entries.emplace(std::make_pair(t.basis[i], t.basis[j]), std::move(rows[i][j - i - 1]));
  return t;
}

namespace {

io::Json entries_json(const StructureTable& table) {
  io::Json entries = io::Json::array();
  for (const auto& [ab, e] : table.entries) {
    io::Json terms = io::Json::array();
    for (const auto& [k, c] : e) terms.push_back({to_string(k), c.to_string()});
    entries.push_back({to_string(ab.first), to_string(ab.second), std::move(terms)});
  }
  return entries;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i, v >>= 4) s[static_cast<std::size_t>(i)] = digits[v & 15];
  return s;
}

GKey parse_key(const TorusSpec& spec, const std::string& s) {
  const auto e = io::parse_g_element(spec, s);
  if (e.size() != 1) throw ParseError("expected a basis symbol, got '" + s + "'");
  return e.begin()->first;
}

}  // namespace

io::Json table_to_json(const TorusSpec& spec, const StructureTable& table) {
  io::Json entries = entries_json(table);
  io::Json j;
  j["spec"] = io::spec_to_json(spec);
  j["max_degree"] = table.max_degree;
  j["pairs"] = table.entries.size();
  j["checksum"] = hex64(fnv1a(entries.dump()));
  j["entries"] = std::move(entries);
  return j;
}

StructureTable table_from_json(const TorusSpec& spec, const io::Json& j) {
  try {
    if (!(io::spec_from_json(j.at("spec")) == spec)) throw ParseError("cache belongs to another torus");
    const io::Json& entries = j.at("entries");
    if (j.at("checksum").get<std::string>() != hex64(fnv1a(entries.dump())))
      throw ParseError("structure-constant cache checksum mismatch");
    StructureTable t;
    t.max_degree = j.at("max_degree").get<int>();
    std::set<GKey> basis;
    for (const auto& e : entries) {
      const GKey a = parse_key(spec, e.at(0).get<std::string>());
      const GKey b = parse_key(spec, e.at(1).get<std::string>());
      GTildeElement val;
      for (const auto& term : e.at(2))
        val.add(parse_key(spec, term.at(0).get<std::string>()), CycloNum::parse(term.at(1).get<std::string>()));
      basis.insert(a);
      basis.insert(b);
      t.entries.emplace(std::make_pair(a, b), std::move(val));
    }
    t.basis.assign(basis.begin(), basis.end());
    if (t.entries.size() != j.at("pairs").get<std::size_t>()) throw ParseError("structure-constant cache is truncated");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed structure-constant cache: ") + e.what());
  }
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string to_string(CacheStatus s) {
  switch (s) {
    case CacheStatus::Hit:
      return "hit";
    case CacheStatus::Miss:
      return "miss";
    case CacheStatus::Corrupt:
      return "corrupt";
  }
  return "?";
}

CacheResult cache_structure_constants(const TorusSpec& spec, int max_degree, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IOFailure("cannot create cache directory '" + dir + "': " + ec.message());
  std::string name = "gtilde_d" + std::to_string(spec.rank()) + "_k";
  for (int k : spec.orders()) name += std::to_string(k) + "-";
  name += "L" + std::to_string(spec.field_order()) + "_deg" + std::to_string(max_degree) + ".json";
  CacheResult res;
  res.path = (fs::path(dir) / name).string();
  if (fs::exists(res.path)) {
    try {
      res.table = table_from_json(spec, io::read_json(res.path));
      if (res.table.max_degree == max_degree) {
        res.status = CacheStatus::Hit;
        return res;
      }
    } catch (const Error&) {
    }
    res.status = CacheStatus::Corrupt;
  }
  res.table = compute_structure_constants(spec, max_degree);
  io::write_file(res.path, table_to_json(spec, res.table).dump() + "\n");
  return res;
}

std::string cache_dir_from_env() {
  const char* v = std::getenv("QTL_CACHE_DIR");
  return v ? std::string(v) : std::string();
}

JacobiReport jacobi_gtilde_exhaustive(const TorusSpec& spec, int key_bound, const StructureTable& table, Execution exec) {
  const auto d = static_cast<std::size_t>(spec.rank());
  std::vector<GKey> keys;
  for (int t = 1; t <= key_bound; ++t)
    for (const auto& p : compositions(d, t))
      for (int j = 0; j < spec.rank(); ++j) keys.push_back(GKey::xd(p, j));
  for (int t = 0; t <= key_bound; ++t)
    for (const auto& l : compositions(d, t))
      for (const auto& w : spec.gamma0()) keys.push_back(GKey::xt(l, w));
  std::sort(keys.begin(), keys.end());
  const std::size_t n = keys.size();
  JacobiReport rep;
  rep.triples = n < 3 ? 0 : n * (n - 1) * (n - 2) / 6;
  rep.counterexample = first_failure(n, exec, [&](std::size_t i) -> std::optional<std::string> {
    const GKey& a = keys[i];
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        const GKey& b = keys[j];
        const GKey& c = keys[k];
        GTildeElement s = table.bracket(a, table.bracket(b, c));
        s += table.bracket(b, table.bracket(c, a));
        s += table.bracket(c, table.bracket(a, b));
        if (!s.is_zero())
          return to_string(a) + ", " + to_string(b) + ", " + to_string(c) + " -> " + to_string(s);
      }
    return std::nullopt;
  });
  return rep;
}

}  // namespace qtl
