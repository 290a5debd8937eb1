#include <gtest/gtest.h>

#include <random>

#include "oracle.hpp"
#include "qtl/errors.hpp"
#include "qtl/gtilde.hpp"
#include "qtl/matrep.hpp"
#include "qtl/verify.hpp"

using qtl::CycloNum;
using qtl::ExpVec;
using qtl::GKey;
using qtl::GTildeElement;
using qtl::TorusSpec;

namespace {

const TorusSpec E1(2, {2});
const TorusSpec E2(2, {3});
const TorusSpec E3(3, {2});

long long binom(long long n, long long k) {
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of p in N^d with |p| = n.
long long count_compositions(long long d, long long n) { return n < 0 ? 0 : binom(n + d - 1, d - 1); }

std::vector<GKey> basis_upto(const TorusSpec& s, int n) {
  std::vector<GKey> out;
  for (int i = 0; i <= n; ++i)
    for (const auto& k : qtl::gtilde_basis(s, i)) out.push_back(k);
  return out;
}

GTildeElement jacobi(const TorusSpec& s, const GKey& a, const GKey& b, const GKey& c, int T) {
  auto br = [&](const GTildeElement& x, const GTildeElement& y) { return qtl::bracket_G(s, x, y, T); };
  return br(a, br(b, c)) + br(b, br(c, a)) + br(c, br(a, b));
}

}  // namespace

TEST(BracketG, Examples) {
  EXPECT_EQ(qtl::bracket_G(E1, GKey::xd({1, 0}, 1), GKey::xd({0, 1}, 0), 3),
            GTildeElement(GKey::xd({1, 0}, 0)) - GTildeElement(GKey::xd({0, 1}, 1)));
  EXPECT_EQ(qtl::bracket_G(E1, GKey::xd({1, 0}, 0), GKey::xt({0, 0}, {1, 2}), 3), GTildeElement(GKey::xt({1, 0}, {1, 2})));
  EXPECT_EQ(qtl::bracket_G(E1, GKey::xt({0, 0}, {1, 2}), GKey::xt({0, 0}, {2, 1}), 0),
            GTildeElement(GKey::xt({0, 0}, {1, 1}), CycloNum(2)));
}

TEST(BracketG, ExponentialTailOfThirdRelation) {
  // r + s = (3,3) = (2,2) + (1,1): the tail is 2 sum_c e^c/c! x^c t^(1,1) with e = (2,2).
  const auto b = qtl::bracket_G(E1, GKey::xt({0, 0}, {1, 2}), GKey::xt({0, 0}, {2, 1}), 2);
  for (const auto& c : qtl::box_points(2, 0, 2)) {
    if (c.total() > 2) continue;
    const qtl::Rational expect = 2 * qtl::exp_coefficient({2, 2}, c);
    EXPECT_EQ(b.coeff(GKey::xt(c, {1, 1})), CycloNum(expect)) << c.to_string();
  }
  EXPECT_EQ(qtl::exp_coefficient({2, 2}, {2, 1}), qtl::Rational(4));
  EXPECT_EQ(qtl::exp_coefficient({3, 0}, {2, 0}), qtl::Rational(9, 2));
}

TEST(BracketG, RejectsMalformedKeys) {
  EXPECT_THROW(qtl::bracket_G(E1, GKey::xd({0, 0}, 0), GKey::xd({1, 0}, 0), 3), qtl::MalformedBasisKey);
  EXPECT_THROW(qtl::bracket_G(E1, GKey::xt({0, 0}, {0, 1}), GKey::xd({1, 0}, 0), 3), qtl::MalformedBasisKey);
  EXPECT_THROW(qtl::bracket_G(E1, GKey::xd({1, 0}, 2), GKey::xd({1, 0}, 0), 3), qtl::MalformedBasisKey);
}

TEST(Grading, GammaDegree) {
  EXPECT_EQ(qtl::gamma_degree(E1, GKey::xd({1, 0}, 0)), E1.central_class());
  EXPECT_EQ(qtl::gamma_degree(E1, GKey::xt({2, 0}, {1, 2})), ExpVec({1, 2}));
  EXPECT_FALSE(qtl::gamma_degree(E1, GTildeElement(GKey::xd({1, 0}, 0)) + GTildeElement(GKey::xt({0, 0}, {1, 2}))));
}

TEST(Grading, FiltrationDegree) {
  EXPECT_EQ(qtl::filtration_degree(GKey::xd({1, 0}, 1)), 0);
  EXPECT_EQ(qtl::filtration_degree(GKey::xt({0, 0}, {1, 1})), 0);
  EXPECT_EQ(qtl::filtration_degree(GKey::xd({1, 1}, 0)), 1);
  EXPECT_EQ(qtl::filtration_degree(GTildeElement()), INT_MAX);
}

TEST(Grading, BasisSizesMatchCount) {
  for (const auto* s : {&E1, &E2, &E3}) {
    const long long d = s->rank(), N2 = s->gamma_order();
    for (int n = 0; n <= 3; ++n) {
      const auto basis = qtl::gtilde_basis(*s, n);
      EXPECT_EQ(static_cast<long long>(basis.size()), d * count_compositions(d, n + 1) + N2 * count_compositions(d, n));
      EXPECT_EQ(static_cast<long long>(qtl::gtilde_x_basis(*s, n).size()), d * count_compositions(d, n + 1));
      for (const auto& k : basis) EXPECT_EQ(k.degree(), n);
    }
  }
}

TEST(Grading, BracketIsGradedAndPreservesTheIdeal) {
  const int T = 3;
  for (const auto* s : {&E1, &E2}) {
    const auto basis = basis_upto(*s, 1);
    for (const auto& a : basis)
      for (const auto& b : basis) {
        const auto c = qtl::bracket_G(*s, a, b, T);
        if (c.is_zero()) continue;
        const auto ga = qtl::gamma_degree(*s, a), gb = qtl::gamma_degree(*s, b), gc = qtl::gamma_degree(*s, c);
        ASSERT_TRUE(gc);
        EXPECT_EQ(*gc, qtl::canonical_rep(*s, *ga + *gb));
        if (qtl::filtration_degree(b) >= 1) EXPECT_GE(qtl::filtration_degree(c), 1);
        EXPECT_GE(qtl::filtration_degree(c), a.degree() + b.degree());
      }
  }
}

TEST(Grading, ThirdRelationVanishesOnCentralSums) {
  for (const auto* s : {&E1, &E2}) {
    for (const auto& r : s->gamma0())
      for (const auto& t : s->gamma0()) {
        if (!qtl::in_R(*s, r + t)) continue;
        EXPECT_TRUE(qtl::bracket_G(*s, GKey::xt({0, 0}, r), GKey::xt({0, 0}, t), 3).is_zero());
        EXPECT_TRUE(qtl::sigma_commutator(*s, r, t).is_zero());
      }
  }
}

TEST(Jacobi, ExhaustiveOnE1) {
  const auto table = qtl::compute_structure_constants(E1, 6);
  const auto report = qtl::jacobi_gtilde_exhaustive(E1, 3, table);
  EXPECT_FALSE(report.counterexample) << *report.counterexample;
  // 4 * 10 XT symbols plus 2 * 9 XD symbols with |p| <= 3.
  const std::size_t n = 40 + 18;
  EXPECT_EQ(report.triples, n * (n - 1) * (n - 2) / 6);
}

TEST(Jacobi, RandomTriplesOnE2) {
  const auto basis = basis_upto(E2, 2);
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  for (int t = 0; t < 500; ++t) {
    const auto &a = basis[pick(rng)], &b = basis[pick(rng)], &c = basis[pick(rng)];
    const auto j = jacobi(E2, a, b, c, 6);
    ASSERT_TRUE(j.is_zero()) << qtl::to_string(a) << " " << qtl::to_string(b) << " " << qtl::to_string(c) << " -> "
                             << qtl::to_string(j);
  }
}

TEST(Quotient, Examples) {
  const auto [gd, gn] = qtl::project_quotient(E1, GKey::xd({1, 0}, 1));
  EXPECT_EQ(gd, qtl::ExactMatrix::unit(2, 2, 0, 1, E1.field()));
  EXPECT_TRUE(gn.is_zero());
  const auto [hd, hn] = qtl::project_quotient(E1, GKey::xt({0, 0}, {1, 1}));
  EXPECT_TRUE(hd.is_zero());
  EXPECT_TRUE(oracle::equal({{CycloNum(0), CycloNum(1)}, {CycloNum(-1), CycloNum(0)}}, hn));
  const auto [kd, kn] = qtl::project_quotient(E1, GKey::xd({1, 1}, 0));
  EXPECT_TRUE(kd.is_zero() && kn.is_zero());
}

TEST(Quotient, HomomorphismOntoGlDPlusGlN) {
  for (const auto* s : {&E1, &E2, &E3}) {
    const auto deg0 = qtl::gtilde_basis(*s, 0);
    for (const auto& a : deg0)
      for (const auto& b : deg0) {
        const auto [ad, an] = qtl::project_quotient(*s, a);
        const auto [bd, bn] = qtl::project_quotient(*s, b);
        const auto [cd, cn] = qtl::project_quotient(*s, qtl::bracket_G(*s, a, b, 2));
        EXPECT_EQ(cd, qtl::commutator(ad, bd));
        EXPECT_EQ(cn, qtl::commutator(an, bn));
      }
    for (int n = 1; n <= 2; ++n)
      for (const auto& k : qtl::gtilde_basis(*s, n)) {
        const auto [kd, kn] = qtl::project_quotient(*s, k);
        EXPECT_TRUE(kd.is_zero() && kn.is_zero());
      }
  }
}

TEST(TheoremParts, CommutatorSpan) {
  const auto r2 = qtl::commutator_span_report(E1, 3);
  ASSERT_EQ(r2.size(), 4u);
  EXPECT_EQ(r2[0].span_dim, 3u);
  EXPECT_EQ(r2[0].full_dim, 4u);
  for (std::size_t n = 1; n < r2.size(); ++n) EXPECT_EQ(r2[n].span_dim, r2[n].full_dim);
  const auto r3 = qtl::commutator_span_report(E3, 2);
  EXPECT_EQ(r3[0].span_dim, 8u);
  EXPECT_EQ(r3[0].full_dim, 9u);
}
