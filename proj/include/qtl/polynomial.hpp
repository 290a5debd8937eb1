#pragma once

#include <optional>
#include <vector>

#include "qtl/matrix.hpp"

namespace qtl {

/// Univariate polynomial over a cyclotomic field, constant term first, no
/// trailing zeros (the zero polynomial is empty).
using Poly = std::vector<CycloNum>;

void trim(Poly& p);
int degree(const Poly& p);
Poly derivative(const Poly& p);
/// Quotient and remainder; throws DivisionByZero for b = 0.
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
/// Monic gcd.
Poly gcd(Poly a, Poly b);
/// p / gcd(p, p'), monic.
Poly square_free_part(const Poly& p);
CycloNum evaluate(const Poly& p, const CycloNum& x);
ExactMatrix evaluate(const Poly& p, const ExactMatrix& m);

/// Monic minimal polynomial of a square matrix.
Poly minimal_polynomial(const ExactMatrix& m);

/// A root of p lying in Q or among the L-th roots of unity of `field`.
std::optional<CycloNum> find_simple_root(const Poly& p, const CycloField& field);

}  // namespace qtl
