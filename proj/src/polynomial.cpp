#include "qtl/polynomial.hpp"

#include "qtl/errors.hpp"

namespace qtl {

void trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly derivative(const Poly& p) {
  Poly out;
  for (std::size_t i = 1; i < p.size(); ++i) out.push_back(CycloNum(static_cast<long>(i)) * p[i]);
  trim(out);
  return out;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.empty()) throw DivisionByZero("polynomial division by zero");
  Poly r = a;
  trim(r);
  if (r.size() < b.size()) return {Poly{}, r};
  Poly q(r.size() - b.size() + 1, CycloNum(0));
  const CycloNum lead_inv = b.back().inverse();
  while (!r.empty() && r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const CycloNum c = r.back() * lead_inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
  return {q, r};
}

namespace {

Poly monic(Poly p) {
  trim(p);
  if (p.empty()) return p;
  const CycloNum inv = p.back().inverse();
  for (auto& c : p) c *= inv;
  return p;
}

}  // namespace

Poly gcd(Poly a, Poly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly square_free_part(const Poly& p) {
  const Poly g = gcd(p, derivative(p));
  return monic(divmod(p, g).first);
}

CycloNum evaluate(const Poly& p, const CycloNum& x) {
  CycloNum acc(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

ExactMatrix evaluate(const Poly& p, const ExactMatrix& m) {
  ExactMatrix acc(m.rows(), m.cols(), m.field());
  const ExactMatrix id = ExactMatrix::identity(m.rows(), m.field());
  for (auto it = p.rbegin(); it != p.rend(); ++it) {
    acc = acc * m;
    acc.add_scaled(*it, id);
  }
  return acc;
}

Poly minimal_polynomial(const ExactMatrix& m) {
  const std::size_t n = m.rows();
  // Krylov sequence I, M, M^2, ... flattened; the first dependency gives the minimal polynomial.
  std::vector<std::vector<CycloNum>> powers;
  ExactMatrix cur = ExactMatrix::identity(n, m.field());
  for (std::size_t k = 0; k <= n; ++k) {
    std::vector<CycloNum> flat;
    flat.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) flat.push_back(cur(i, j));
    powers.push_back(std::move(flat));
    // Solve sum_{i<k} c_i M^i = -M^k.
    if (k > 0) {
      ExactMatrix a(n * n, k, m.field()), b(n * n, 1, m.field());
      for (std::size_t r = 0; r < n * n; ++r) {
        for (std::size_t i = 0; i < k; ++i) a(r, i) = powers[i][r];
        b(r, 0) = -powers[k][r];
      }
      if (auto sol = solve(a, b)) {
        Poly p(k + 1, CycloNum(1));
        for (std::size_t i = 0; i < k; ++i) p[i] = (*sol)(i, 0);
        trim(p);
        return p;
      }
    }
    cur = cur * m;
  }
  throw Error("minimal_polynomial: no dependency found");
}

namespace {

std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<mpz_class> out;
  if (n == 0) return out;
  // Trial division; the polynomials seen here have small coefficients.
  for (mpz_class d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d * d != n) out.push_back(n / d);
    }
  }
  return out;
}

}  // namespace

std::optional<CycloNum> find_simple_root(const Poly& p, const CycloField& field) {
  if (p.size() < 2) return std::nullopt;
  for (long long j = 0; j < field.order(); ++j) {
    const CycloNum z = CycloNum::root_of_unity(field, j);
    if (evaluate(p, z).is_zero()) return z;
  }
  if (evaluate(p, CycloNum(0)).is_zero()) return CycloNum(0);
  bool rational = true;
  for (const auto& c : p) rational = rational && c.is_rational();
  if (!rational) return std::nullopt;
  // Rational root theorem on the integer multiple of p.
  mpz_class lcm = 1;
  for (const auto& c : p) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.rational_part().get_den_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : p) ints.push_back(mpz_class(c.rational_part() * lcm));
  std::size_t low = 0;
  while (ints[low] == 0) ++low;
  for (const auto& num : divisors(ints[low]))
    for (const auto& den : divisors(ints.back()))
      for (int sign : {1, -1}) {
        Rational q(mpz_class(num * sign), den);
        q.canonicalize();
        const CycloNum x(q);
        if (evaluate(p, x).is_zero()) return CycloNum(field, 0) + x;
      }
  return std::nullopt;
}

}  // namespace qtl
