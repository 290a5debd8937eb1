#include "qtl/cyclo.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <ostream>
#include <sstream>

#include "qtl/errors.hpp"

namespace qtl {

int euler_phi(int n) {
  int result = n;
  for (int p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

std::vector<long long> cyclotomic_polynomial(int n) {
  if (n < 1) throw std::invalid_argument("cyclotomic_polynomial: order must be >= 1");
  // x^n - 1 divided by Phi_d for every proper divisor d.
  std::vector<long long> num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (int d = 1; d < n; ++d) {
    if (n % d != 0) continue;
    const auto den = cyclotomic_polynomial(d);
    const int dd = static_cast<int>(den.size()) - 1;
    const int dn = static_cast<int>(num.size()) - 1;
    std::vector<long long> quot(dn - dd + 1, 0);
    for (int k = dn; k >= dd; --k) {
      const long long c = num[k];
      quot[k - dd] = c;
      if (c == 0) continue;
      for (int j = 0; j <= dd; ++j) num[k - dd + j] -= c * den[j];
    }
    num = std::move(quot);
  }
  return num;
}

CycloField::CycloField(int order)
    : order_(order), degree_(euler_phi(order)), phi_(qtl::cyclotomic_polynomial(order)) {
  const std::size_t count = std::max<std::size_t>(order_, 2 * degree_ - 1);
  powers_.reserve(count);
  std::vector<mpz_class> cur(degree_, 0);
  cur[0] = 1;
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<std::pair<int, mpz_class>> sparse;
    for (int i = 0; i < degree_; ++i)
      if (cur[i] != 0) sparse.emplace_back(i, cur[i]);
    powers_.push_back(std::move(sparse));
    // cur *= x, then eliminate the x^degree term with the monic modulus.
    mpz_class top = cur[degree_ - 1];
    for (int i = degree_ - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < degree_; ++i) cur[i] -= top * static_cast<long>(phi_[i]);
  }
}

const CycloField& CycloField::get(int order) {
  if (order < 1) throw std::invalid_argument("CycloField: order must be >= 1");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<CycloField>> registry;
  std::lock_guard lock(mutex);
  auto& slot = registry[order];
  if (!slot) slot.reset(new CycloField(order));
  return *slot;
}

namespace {

// Reduces a dense coefficient vector of any length into `f`'s power basis.
std::vector<Rational> reduce(const CycloField& f, const std::vector<Rational>& raw) {
  const int deg = f.degree();
  std::vector<Rational> out(deg);
  for (std::size_t k = 0; k < raw.size(); ++k) {
    if (sgn(raw[k]) == 0) continue;
    if (static_cast<int>(k) < deg) {
      out[k] += raw[k];
      continue;
    }
    // x^k = x^(k mod L) in the field.
    std::size_t kk = k;
    if (kk >= f.reduced_power_count()) kk %= f.order();
    for (const auto& [i, v] : f.reduced_power(kk)) out[i] += raw[k] * v;
  }
  return out;
}

// Solves a dense square rational system by Gauss-Jordan elimination.
std::vector<Rational> solve_rational(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && sgn(a[piv][col]) == 0) ++piv;
    if (piv == n) throw DivisionByZero("singular multiplication matrix");
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    const Rational inv = 1 / a[col][col];
    for (std::size_t j = col; j < n; ++j) a[col][j] *= inv;
    b[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(a[r][col]) == 0) continue;
      const Rational factor = a[r][col];
      for (std::size_t j = col; j < n; ++j) a[r][j] -= factor * a[col][j];
      b[r] -= factor * b[col];
    }
  }
  return b;
}

}  // namespace

CycloNum::CycloNum() : field_(&CycloField::get(1)), c_(1) {}

CycloNum::CycloNum(long v) : field_(&CycloField::get(1)), c_{Rational(v)} {}

CycloNum::CycloNum(const Rational& v) : field_(&CycloField::get(1)), c_{v} {}

CycloNum::CycloNum(const CycloField& field, const Rational& v) : field_(&field), c_(field.degree()) {
  c_[0] = v;
}

CycloNum::CycloNum(const CycloField& field, std::vector<Rational> coeffs)
    : field_(&field), c_(reduce(field, coeffs)) {}

CycloNum CycloNum::root_of_unity(const CycloField& field, long long j) {
  long long r = j % field.order();
  if (r < 0) r += field.order();
  CycloNum out(field, Rational(0));
  for (const auto& [i, v] : field.reduced_power(static_cast<std::size_t>(r))) out.c_[i] = v;
  return out;
}

bool CycloNum::is_zero() const {
  for (const auto& c : c_)
    if (sgn(c) != 0) return false;
  return true;
}

bool CycloNum::is_rational() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (sgn(c_[i]) != 0) return false;
  return true;
}

bool CycloNum::is_one() const { return is_rational() && c_[0] == 1; }

const CycloField& CycloNum::common_field(const CycloNum& o) const {
  if (field_ == o.field_) return *field_;
  // Q(zeta_1) = Q(zeta_2) = Q; keep the larger label so printed values carry the torus order.
  if (o.field_->degree() == 1 && field_->degree() == 1)
    return field_->order() >= o.field_->order() ? *field_ : *o.field_;
  if (o.field_->degree() == 1) return *field_;
  if (field_->degree() == 1) return *o.field_;
  throw FieldMismatch("cannot combine elements of Q(zeta_" + std::to_string(field_->order()) +
                      ") and Q(zeta_" + std::to_string(o.field_->order()) + ")");
}

std::vector<Rational> CycloNum::coeffs_in(const CycloField& f) const {
  if (field_ == &f) return c_;
  std::vector<Rational> out(f.degree());
  out[0] = c_[0];
  return out;
}

CycloNum CycloNum::operator-() const {
  CycloNum out = *this;
  for (auto& c : out.c_) c = -c;
  return out;
}

CycloNum& CycloNum::operator+=(const CycloNum& o) {
  const CycloField& f = common_field(o);
  if (field_ != &f) {
    c_ = coeffs_in(f);
    field_ = &f;
  }
  if (o.field_ == field_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  } else {
    c_[0] += o.c_[0];
  }
  return *this;
}

CycloNum& CycloNum::operator-=(const CycloNum& o) {
  const CycloField& f = common_field(o);
  if (field_ != &f) {
    c_ = coeffs_in(f);
    field_ = &f;
  }
  if (o.field_ == field_) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  } else {
    c_[0] -= o.c_[0];
  }
  return *this;
}

CycloNum operator*(const CycloNum& a, const CycloNum& b) {
  const CycloField& f = a.common_field(b);
  if (a.field_->degree() == 1 || b.field_->degree() == 1) {
    const CycloNum& scalar = a.field_->degree() == 1 ? a : b;
    const CycloNum& other = a.field_->degree() == 1 ? b : a;
    CycloNum out(f, Rational(0));
    const auto oc = other.coeffs_in(f);
    for (std::size_t i = 0; i < oc.size(); ++i) out.c_[i] = oc[i] * scalar.c_[0];
    return out;
  }
  const int deg = f.degree();
  std::vector<Rational> raw(2 * deg - 1);
  for (int i = 0; i < deg; ++i) {
    if (sgn(a.c_[i]) == 0) continue;
    for (int j = 0; j < deg; ++j) {
      if (sgn(b.c_[j]) == 0) continue;
      raw[i + j] += a.c_[i] * b.c_[j];
    }
  }
  CycloNum out;
  out.field_ = &f;
  out.c_ = reduce(f, raw);
  return out;
}

CycloNum& CycloNum::operator*=(const CycloNum& o) { return *this = *this * o; }

CycloNum& CycloNum::operator/=(const CycloNum& o) { return *this = *this * o.inverse(); }

bool operator==(const CycloNum& a, const CycloNum& b) {
  if (a.field_ == b.field_) return a.c_ == b.c_;
  if (a.field_->degree() == 1 || b.field_->degree() == 1)
    return a.is_rational() && b.is_rational() && a.c_[0] == b.c_[0];
  return false;
}

CycloNum CycloNum::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (is_rational()) {
    CycloNum out(*field_, Rational(1 / c_[0]));
    return out;
  }
  // Column j of the multiplication-by-this matrix is this * x^j.
  const int deg = field_->degree();
  std::vector<std::vector<Rational>> m(deg, std::vector<Rational>(deg));
  for (int j = 0; j < deg; ++j) {
    std::vector<Rational> raw(j + deg);
    for (int i = 0; i < deg; ++i) raw[i + j] = c_[i];
    const auto col = reduce(*field_, raw);
    for (int i = 0; i < deg; ++i) m[i][j] = col[i];
  }
  std::vector<Rational> rhs(deg);
  rhs[0] = 1;
  CycloNum out;
  out.field_ = field_;
  out.c_ = solve_rational(std::move(m), std::move(rhs));
  return out;
}

CycloNum CycloNum::pow(long long e) const {
  CycloNum base = e < 0 ? inverse() : *this;
  unsigned long long n = e < 0 ? static_cast<unsigned long long>(-e) : static_cast<unsigned long long>(e);
  CycloNum result(*field_, Rational(1));
  while (n) {
    if (n & 1ULL) result *= base;
    base *= base;
    n >>= 1;
  }
  return result;
}

std::complex<double> CycloNum::to_complex() const {
  std::complex<double> z = 0;
  const double step = 2.0 * std::numbers::pi / field_->order();
  for (std::size_t k = 0; k < c_.size(); ++k) {
    if (sgn(c_[k]) == 0) continue;
    z += c_[k].get_d() * std::polar(1.0, step * static_cast<double>(k));
  }
  return z;
}

std::string rational_to_string(const Rational& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.empty()) throw ParseError("empty rational");
  auto is_int = [](std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  const auto slash = text.find('/');
  std::string num(trim(text.substr(0, slash)));
  std::string den = slash == std::string_view::npos ? "1" : std::string(trim(text.substr(slash + 1)));
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  if (!is_int(num) || !is_int(den)) throw ParseError("bad rational '" + std::string(text) + "'");
  mpz_class n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

std::string CycloNum::to_string() const {
  std::string out = std::to_string(field_->order()) + ":[";
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (i) out += ',';
    out += rational_to_string(c_[i]);
  }
  out += ']';
  return out;
}

CycloNum CycloNum::parse(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) return CycloNum(parse_rational(text));
  const std::string order_text(text.substr(0, colon));
  int order = 0;
  try {
    std::size_t used = 0;
    order = std::stoi(order_text, &used);
    if (used != order_text.size()) throw ParseError("bad field order");
  } catch (const std::logic_error&) {
    throw ParseError("bad field order in '" + std::string(text) + "'");
  }
  if (order < 1) throw ParseError("field order must be positive");
  auto body = text.substr(colon + 1);
  if (body.size() < 2 || body.front() != '[' || body.back() != ']')
    throw ParseError("expected [c0,...] in '" + std::string(text) + "'");
  body = body.substr(1, body.size() - 2);
  std::vector<Rational> coeffs;
  std::size_t start = 0;
  while (start <= body.size()) {
    const auto comma = body.find(',', start);
    const auto piece = body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    coeffs.push_back(parse_rational(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return CycloNum(CycloField::get(order), std::move(coeffs));
}

std::ostream& operator<<(std::ostream& os, const CycloNum& x) { return os << x.to_string(); }

}  // namespace qtl
