#include "qtl/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "qtl/errors.hpp"

namespace qtl::io {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

Json expvec_json(const ExpVec& e) { return Json(e.values()); }

template <class T>
T field_or_throw(const Json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("field '") + key + "': " + e.what());
  }
}

}  // namespace

TorusSpec spec_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("torus spec must be a JSON object");
  const int d = field_or_throw<int>(j, "d");
  const auto k = j.contains("k") ? field_or_throw<std::vector<int>>(j, "k") : std::vector<int>{};
  const int z = j.contains("z") ? field_or_throw<int>(j, "z") : static_cast<int>(k.size());
  if (z != static_cast<int>(k.size())) throw InvalidSpec("z = " + std::to_string(z) + " but k has " +
                                                         std::to_string(k.size()) + " entries");
  const int l = j.contains("L") ? field_or_throw<int>(j, "L") : 0;
  return TorusSpec(d, k, l);
}

Json spec_to_json(const TorusSpec& spec) {
  Json j;
  j["d"] = spec.rank();
  j["z"] = spec.pairs();
  j["k"] = spec.orders();
  j["L"] = spec.field_order();
  return j;
}

TorusSpec builtin_spec(std::string_view name) {
  const std::string n = lower(name);
  if (n == "e1") return TorusSpec(2, {2});
  if (n == "e2") return TorusSpec(2, {3});
  if (n == "e3") return TorusSpec(3, {2});
  throw InvalidSpec("unknown builtin torus '" + std::string(name) + "'");
}

TorusSpec load_spec(const std::string& name_or_path) {
  const std::string n = lower(name_or_path);
  if (n == "e1" || n == "e2" || n == "e3") return builtin_spec(n);
  return spec_from_json(read_json(name_or_path));
}

Json matrix_to_json(const ExactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).to_string());
    rows.push_back(std::move(row));
  }
  return rows;
}

ExactMatrix matrix_from_json(const Json& j, const CycloField& field) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  ExactMatrix m(rows, cols, field);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw ParseError("ragged matrix row " + std::to_string(i));
    for (std::size_t c = 0; c < cols; ++c) {
      const auto& e = j[i][c];
      if (e.is_string()) {
        m(i, c) = CycloNum::parse(e.get<std::string>());
      } else if (e.is_number_integer()) {
        m(i, c) = CycloNum(field, Rational(e.get<long>()));
      } else {
        throw ParseError("matrix entries must be strings or integers");
      }
    }
  }
  return m;
}

Json representation_to_json(const GRepresentation& rep) {
  Json j;
  j["spec"] = spec_to_json(rep.spec());
  j["L"] = rep.spec().field_order();
  j["dims"] = rep.space().dims();
  j["cutoff"] = rep.cutoff();
  Json acts = Json::array();
  for (const auto& [k, m] : rep.actions()) {
    Json a;
    a["symbol"] = to_string(k);
    a["matrix"] = matrix_to_json(m);
    acts.push_back(std::move(a));
  }
  j["actions"] = std::move(acts);
  return j;
}

GRepresentation representation_from_json(const Json& j) {
  const TorusSpec spec = spec_from_json(field_or_throw<Json>(j, "spec"));
  const auto dims = field_or_throw<std::vector<std::size_t>>(j, "dims");
  if (dims.size() != spec.gamma0().size())
    throw InvalidModuleData("expected " + std::to_string(spec.gamma0().size()) + " class dimensions");
  GRepresentation rep(spec, GradedVectorSpace(dims), field_or_throw<int>(j, "cutoff"));
  if (j.contains("actions"))
    for (const auto& a : j.at("actions")) {
      const GTildeElement e = parse_g_element(spec, field_or_throw<std::string>(a, "symbol"));
      if (e.size() != 1 || !e.begin()->second.is_one())
        throw ParseError("action symbol must be a single basis symbol");
      rep.set(e.begin()->first, matrix_from_json(field_or_throw<Json>(a, "matrix"), spec.field()));
    }
  return rep;
}

Json vw_to_json(const TorusSpec& spec, const GLdGLNModule& vw) {
  Json j;
  j["spec"] = spec_to_json(spec);
  Json v;
  v["dim"] = vw.v.dim;
  v["e"] = Json::array();
  for (const auto& m : vw.v.e) v["e"].push_back(matrix_to_json(m));
  Json w;
  w["dim"] = vw.w.dim;
  w["grading"] = vw.w.grading;
  w["x"] = Json::array();
  for (const auto& m : vw.w.x) w["x"].push_back(matrix_to_json(m));
  j["v"] = std::move(v);
  j["w"] = std::move(w);
  return j;
}

GLdGLNModule vw_from_json(const Json& j, const TorusSpec& spec) {
  GLdGLNModule vw;
  const Json v = field_or_throw<Json>(j, "v");
  const Json w = field_or_throw<Json>(j, "w");
  vw.v.dim = field_or_throw<std::size_t>(v, "dim");
  for (const auto& m : field_or_throw<Json>(v, "e")) vw.v.e.push_back(matrix_from_json(m, spec.field()));
  vw.w.dim = field_or_throw<std::size_t>(w, "dim");
  vw.w.grading = field_or_throw<std::vector<std::size_t>>(w, "grading");
  for (const auto& m : field_or_throw<Json>(w, "x")) vw.w.x.push_back(matrix_from_json(m, spec.field()));
  validate(spec, vw);
  return vw;
}

Json cuspidal_dump(const CuspidalModule& m, int box, int symbol_box) {
  const TorusSpec& spec = m.spec();
  std::vector<std::pair<Decomposition, ExpVec>> labels;
  for (const auto& s : box_points(static_cast<std::size_t>(spec.rank()), -box, box))
    labels.emplace_back(decompose(spec, s), s);
  std::sort(labels.begin(), labels.end(), [](const auto& a, const auto& b) {
    return std::tie(a.first.rep, a.first.central) < std::tie(b.first.rep, b.first.central);
  });
  const auto symbols = symbols_in_box(spec, symbol_box);

  Json j;
  j["spec"] = spec_to_json(spec);
  j["alpha"] = Json::array();
  for (const auto& a : m.alpha()) j["alpha"].push_back(a.to_string());
  j["box"] = box;
  j["symbol_box"] = symbol_box;
  Json weights = Json::array();
  for (const auto& [dec, s] : labels) {
    Json w;
    w["class"] = expvec_json(dec.rep);
    w["shift"] = expvec_json(dec.central);
    w["dim"] = m.multiplicity(s);
    Json acts = Json::array();
    for (const auto& k : symbols) {
      auto [t, a] = m.act(k, s);
      if (a.is_zero()) continue;
      const auto td = decompose(spec, t);
      Json e;
      e["symbol"] = to_string(k);
      e["target_class"] = expvec_json(td.rep);
      e["target_shift"] = expvec_json(td.central);
      e["matrix"] = matrix_to_json(a);
      acts.push_back(std::move(e));
    }
    w["actions"] = std::move(acts);
    weights.push_back(std::move(w));
  }
  j["weights"] = std::move(weights);
  return j;
}

namespace {

struct Term {
  CycloNum scalar;
  std::string name;
  std::vector<std::vector<std::int64_t>> groups;  // arguments split at ';'
};

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::int64_t parse_int(const std::string& s) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(s, &used);
    if (used != s.size()) throw ParseError("bad integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw ParseError("bad integer '" + s + "'");
  }
}

CycloNum parse_scalar(const std::string& s, const CycloField* field) {
  if (!s.empty() && (s[0] == 'z' || s[0] == 'Z')) {
    if (!field) throw ParseError("root-of-unity scalar needs a torus");
    if (s.size() < 3 || s[1] != '^') throw ParseError("expected z^j, got '" + s + "'");
    return CycloNum::root_of_unity(*field, parse_int(s.substr(2)));
  }
  return CycloNum::parse(s);
}

Term parse_symbol(const std::string& text) {
  const auto open = text.find('(');
  if (open == std::string::npos || text.back() != ')') throw ParseError("expected a basis symbol, got '" + text + "'");
  Term t{CycloNum(1), trim(text.substr(0, open)), {}};
  std::string body = text.substr(open + 1, text.size() - open - 2);
  std::size_t start = 0;
  for (;;) {
    const auto semi = body.find(';', start);
    const std::string group = body.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
    std::vector<std::int64_t> vals;
    std::stringstream ss(group);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const std::string v = trim(item);
      if (v.empty()) throw ParseError("empty coordinate in '" + text + "'");
      vals.push_back(parse_int(v));
    }
    t.groups.push_back(std::move(vals));
    if (semi == std::string::npos) break;
    start = semi + 1;
  }
  return t;
}

// Splits at top-level + and - (outside parentheses and brackets).
std::vector<Term> parse_terms(std::string_view text, const CycloField* field) {
  std::vector<Term> out;
  int depth = 0;
  std::string cur;
  bool negative = false;
  auto flush = [&] {
    const std::string body = trim(cur);
    cur.clear();
    if (body.empty()) throw ParseError("empty term in '" + std::string(text) + "'");
    int dd = 0;
    std::size_t star = std::string::npos;
    for (std::size_t i = 0; i < body.size(); ++i) {
      if (body[i] == '(' || body[i] == '[') ++dd;
      if (body[i] == ')' || body[i] == ']') --dd;
      if (body[i] == '*' && dd == 0) star = i;
    }
    Term t = parse_symbol(trim(star == std::string::npos ? body : body.substr(star + 1)));
    if (star != std::string::npos) t.scalar = parse_scalar(trim(body.substr(0, star)), field);
    if (negative) t.scalar = -t.scalar;
    out.push_back(std::move(t));
  };
  const std::string s = trim(text);
  if (s.empty() || s == "0") return out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth < 0) throw ParseError("unbalanced brackets in '" + s + "'");
    if (depth == 0 && (c == '+' || c == '-')) {
      if (!trim(cur).empty()) {
        flush();
      } else if (i != 0 && !out.empty()) {
        throw ParseError("dangling sign in '" + s + "'");
      }
      negative = c == '-';
      continue;
    }
    cur += c;
  }
  if (depth != 0) throw ParseError("unbalanced brackets in '" + s + "'");
  flush();
  return out;
}

void expect_groups(const Term& t, std::size_t groups, std::string_view form) {
  if (t.groups.size() != groups) throw ParseError("expected " + std::string(form));
}

}  // namespace

DElement parse_d_element(const TorusSpec& spec, std::string_view text) {
  DElement out;
  for (auto& t : parse_terms(text, &spec.field())) {
    DKey k;
    if (t.name == "D") {
      expect_groups(t, 2, "D(i;m1,...,md)");
      if (t.groups[0].size() != 1) throw ParseError("D(i;...) takes a single index");
      k = DKey::deriv(static_cast<int>(t.groups[0][0] - 1), ExpVec(t.groups[1]));
    } else if (t.name == "T") {
      expect_groups(t, 1, "T(s1,...,sd)");
      k = DKey::inner(ExpVec(t.groups[0]));
    } else if (t.name == "Z") {
      expect_groups(t, 1, "Z(n1,...,nd)");
      k = DKey::central(ExpVec(t.groups[0]));
    } else {
      throw ParseError("unknown derivation symbol '" + t.name + "'");
    }
    validate_key(spec, k);
    out.add(k, t.scalar);
  }
  return out;
}

WdElement parse_wd_element(std::string_view text) {
  WdElement out;
  std::optional<std::size_t> d;
  for (auto& t : parse_terms(text, nullptr)) {
    if (t.name != "W") throw ParseError("unknown W_d symbol '" + t.name + "'");
    expect_groups(t, 2, "W(i;m1,...,md)");
    if (t.groups[0].size() != 1) throw ParseError("W(i;...) takes a single index");
    const ExpVec m(t.groups[1]);
    const auto i = t.groups[0][0] - 1;
    if (d && *d != m.size()) throw MalformedBasisKey("mixed ranks in '" + std::string(text) + "'");
    d = m.size();
    if (i < 0 || i >= static_cast<std::int64_t>(m.size())) throw MalformedBasisKey("index out of range in W");
    out.add(WKey{static_cast<int>(i), m}, t.scalar);
  }
  return out;
}

GTildeElement parse_g_element(const TorusSpec& spec, std::string_view text) {
  GTildeElement out;
  for (auto& t : parse_terms(text, &spec.field())) {
    GKey k;
    if (t.name == "XD") {
      expect_groups(t, 2, "XD(p1,...,pd;j)");
      if (t.groups[1].size() != 1) throw ParseError("XD(...;j) takes a single index");
      k = GKey::xd(ExpVec(t.groups[0]), static_cast<int>(t.groups[1][0] - 1));
    } else if (t.name == "XT") {
      expect_groups(t, 2, "XT(l1,...,ld;w1,...,wd)");
      k = GKey::xt(ExpVec(t.groups[0]), ExpVec(t.groups[1]));
    } else {
      throw ParseError("unknown G~ symbol '" + t.name + "'");
    }
    validate_key(spec, k);
    out.add(k, t.scalar);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IOFailure("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IOFailure("cannot write '" + path + "'");
  out << text;
  if (!out) throw IOFailure("write to '" + path + "' failed");
}

Json read_json(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace qtl::io
