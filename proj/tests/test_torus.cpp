#include <gtest/gtest.h>

#include <set>

#include "oracle.hpp"
#include "qtl/errors.hpp"
#include "qtl/torus.hpp"

using qtl::CycloNum;
using qtl::ExpVec;
using qtl::TorusSpec;

namespace {

const TorusSpec& e1() {
  static const TorusSpec s(2, {2});
  return s;
}
const TorusSpec& e2() {
  static const TorusSpec s(2, {3});
  return s;
}
const TorusSpec& e3() {
  static const TorusSpec s(3, {2});
  return s;
}

std::vector<const TorusSpec*> all_specs() { return {&e1(), &e2(), &e3()}; }

}  // namespace

TEST(TorusSpec, ShapeData) {
  EXPECT_EQ(e1().matrix_size(), 2);
  EXPECT_EQ(e2().gamma_order(), 9);
  EXPECT_EQ(e3().b_diagonal(), (std::vector<std::int64_t>{2, 2, 1}));
  EXPECT_EQ(e2().field_order(), 3);
  const TorusSpec big(4, {4, 2}, 8);
  EXPECT_EQ(big.matrix_size(), 8);
  EXPECT_EQ(big.b_diagonal(), (std::vector<std::int64_t>{4, 4, 2, 2}));
  EXPECT_EQ(big.q(1), CycloNum::root_of_unity(big.field(), 4));
}

TEST(TorusSpec, RejectsBadInput) {
  EXPECT_THROW(TorusSpec(1, {}), qtl::InvalidSpec);
  EXPECT_THROW(TorusSpec(2, {2, 2}), qtl::InvalidSpec);
  EXPECT_THROW(TorusSpec(4, {2, 4}), qtl::InvalidSpec);
  EXPECT_THROW(TorusSpec(2, {3}, 4), qtl::InvalidSpec);
}

TEST(Sigma, ExamplesOnE2) {
  const auto& s = e2();
  EXPECT_EQ(qtl::sigma_hat(s, {1, 0}, {0, 1}), CycloNum(1));
  EXPECT_EQ(qtl::sigma_hat(s, {0, 1}, {1, 0}), oracle::zeta(s, 1));
  EXPECT_EQ(qtl::sigma_hat(s, {0, 3}, {1, 0}), CycloNum(1));
}

TEST(Sigma, MatchesReorderingOracle) {
  for (const auto* s : all_specs()) {
    const auto box = qtl::box_points(static_cast<std::size_t>(s->rank()), -2, 2);
    for (const auto& m : box)
      for (const auto& n : box)
        ASSERT_EQ(qtl::sigma_hat(*s, m, n), oracle::zeta(*s, oracle::reorder_exponent(*s, m, n)))
            << m.to_string() << n.to_string();
  }
}

TEST(Sigma, BimultiplicativeExhaustive) {
  for (const auto* s : {&e1(), &e2()}) {
    const std::int64_t r = 2 * s->orders()[0];
    const auto box = qtl::box_points(2, -r, r);
    const long long L = s->field_order();
    for (const auto& m : box)
      for (const auto& n : box) {
        const long long mn = qtl::sigma_exponent(*s, m, n);
        for (std::size_t i = 0; i < 2; ++i) {
          const auto u = ExpVec::unit(2, i);
          EXPECT_EQ((qtl::sigma_exponent(*s, m + u, n)) % L, (mn + qtl::sigma_exponent(*s, u, n)) % L);
          EXPECT_EQ((qtl::sigma_exponent(*s, m, n + u)) % L, (mn + qtl::sigma_exponent(*s, m, u)) % L);
        }
      }
  }
}

TEST(RadicalSubgroup, Examples) {
  EXPECT_TRUE(qtl::in_R(e2(), {3, 3}));
  EXPECT_FALSE(qtl::in_R(e2(), {1, 0}));
  for (const auto* s : all_specs()) EXPECT_TRUE(qtl::in_R(*s, s->zero()));
  EXPECT_TRUE(qtl::in_R(e3(), {2, -4, 1}));
}

TEST(RadicalSubgroup, CharacterizedBySymmetricPairing) {
  for (const auto* s : all_specs()) {
    const auto d = static_cast<std::size_t>(s->rank());
    for (const auto& m : qtl::box_points(d, -4, 4)) {
      bool symmetric = true;
      for (std::size_t i = 0; i < d; ++i) {
        const auto e = ExpVec::unit(d, i);
        symmetric = symmetric && qtl::sigma_hat(*s, m, e) == qtl::sigma_hat(*s, e, m);
      }
      EXPECT_EQ(qtl::in_R(*s, m), symmetric) << m.to_string();
    }
  }
}

TEST(CanonicalRep, Examples) {
  EXPECT_EQ(qtl::canonical_rep(e2(), {0, 0}), ExpVec({3, 3}));
  EXPECT_EQ(qtl::canonical_rep(e2(), {4, -1}), ExpVec({1, 2}));
  EXPECT_EQ(qtl::canonical_rep(e2(), {3, 1}), ExpVec({3, 1}));
  EXPECT_EQ(qtl::canonical_rep(e3(), {1, 0, 5}), ExpVec({1, 2, 0}));
}

TEST(Decompose, Examples) {
  auto d = qtl::decompose(e2(), {4, -1});
  EXPECT_EQ(d.central, ExpVec({3, -3}));
  EXPECT_EQ(d.rep, ExpVec({1, 2}));
  d = qtl::decompose(e1(), {1, 0});
  EXPECT_EQ(d.central, ExpVec({0, -2}));
  EXPECT_EQ(d.rep, ExpVec({1, 2}));
  d = qtl::decompose(e2(), {3, 3});
  EXPECT_EQ(d.central, ExpVec({0, 0}));
  EXPECT_EQ(d.rep, ExpVec({3, 3}));
}

TEST(Decompose, GammaZeroIsACompleteSetOfRepresentatives) {
  for (const auto* s : all_specs()) {
    const auto& g0 = s->gamma0();
    EXPECT_EQ(static_cast<long long>(g0.size()), s->gamma_order());
    EXPECT_TRUE(std::is_sorted(g0.begin(), g0.end()));
    EXPECT_TRUE(qtl::in_R(*s, s->central_class()));
    const auto d = static_cast<std::size_t>(s->rank());
    std::set<ExpVec> seen;
    for (const auto& m : qtl::box_points(d, -5, 5)) {
      const auto dec = qtl::decompose(*s, m);
      EXPECT_EQ(dec.central + dec.rep, m);
      EXPECT_TRUE(qtl::in_R(*s, dec.central));
      EXPECT_TRUE(std::binary_search(g0.begin(), g0.end(), dec.rep));
      seen.insert(dec.rep);
      for (const auto& w : g0)
        if (w != dec.rep) EXPECT_FALSE(qtl::in_R(*s, m - w));
    }
    EXPECT_EQ(seen.size(), g0.size());
  }
}

TEST(Monomials, Examples) {
  const auto& s = e1();
  const qtl::Monomial a{CycloNum(1), {0, 1}}, b{CycloNum(1), {1, 0}};
  EXPECT_EQ(qtl::multiply_monomials(s, a, b), (qtl::Monomial{CycloNum(-1), {1, 1}}));
  EXPECT_EQ(qtl::multiply_monomials(s, b, a), (qtl::Monomial{CycloNum(1), {1, 1}}));
  for (const auto* sp : all_specs()) {
    const auto d = static_cast<std::size_t>(sp->rank());
    for (const auto& m : qtl::box_points(d, -2, 2)) {
      if (!qtl::in_R(*sp, m)) continue;
      for (const auto& n : qtl::box_points(d, -2, 2)) {
        const auto p = qtl::multiply_monomials(*sp, {CycloNum(1), m}, {CycloNum(1), n});
        EXPECT_EQ(p.coeff, CycloNum(1));
        EXPECT_EQ(p.exp, m + n);
      }
    }
  }
}

TEST(Monomials, AssociativeOnBoxedTriples) {
  for (const auto* s : {&e1(), &e2()}) {
    const auto box = qtl::box_points(2, -2, 2);
    for (const auto& a : box)
      for (const auto& b : box)
        for (const auto& c : box) {
          const qtl::Monomial x{CycloNum(1), a}, y{CycloNum(2), b}, z{CycloNum(1), c};
          ASSERT_EQ(qtl::multiply_monomials(*s, qtl::multiply_monomials(*s, x, y), z),
                    qtl::multiply_monomials(*s, x, qtl::multiply_monomials(*s, y, z)));
        }
  }
}

TEST(NormalForm, Validator) {
  const auto& s = e2();
  std::vector<std::vector<CycloNum>> q(2, std::vector<CycloNum>(2, CycloNum(1)));
  q[1][0] = s.q(0);
  q[0][1] = s.q(0).inverse();
  EXPECT_TRUE(qtl::matches_normal_form(s, q));
  std::swap(q[1][0], q[0][1]);
  EXPECT_FALSE(qtl::matches_normal_form(s, q));
}
