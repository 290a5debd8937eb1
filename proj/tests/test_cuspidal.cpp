#include <gtest/gtest.h>

#include "qtl/cuspidal.hpp"
#include "qtl/errors.hpp"

using qtl::CuspidalModule;
using qtl::CycloNum;
using qtl::DKey;
using qtl::ExactMatrix;
using qtl::ExpVec;
using qtl::GKey;
using qtl::GRepresentation;
using qtl::TorusSpec;

namespace {

const TorusSpec E1(2, {2});
const TorusSpec E2(2, {3});

std::vector<CycloNum> zero_alpha(const TorusSpec& s) { return std::vector<CycloNum>(static_cast<std::size_t>(s.rank()), CycloNum(0)); }

std::vector<CycloNum> generic_alpha(const TorusSpec& s) {
  std::vector<CycloNum> a;
  for (int i = 0; i < s.rank(); ++i) a.emplace_back(qtl::Rational(1, i + 2));
  return a;
}

qtl::GLdGLNModule natural_regular(const TorusSpec& s) { return {qtl::natural_gld(s), qtl::graded_regular_glN(s)}; }

// The regular module with every class shifted by c, basis reordered so the
// grading stays nondecreasing.
qtl::GradedGLNModule shifted_regular(const TorusSpec& s, const ExpVec& c) {
  const auto w = qtl::graded_regular_glN(s);
  const auto& g0 = s.gamma0();
  const std::size_t n = g0.size();
  ExactMatrix p(n, n, s.field());
  for (std::size_t j = 0; j < n; ++j) p(s.gamma0_index(qtl::canonical_rep(s, g0[j] - c)), j) = CycloNum(1);
  qtl::GradedGLNModule out{n, {}, {}};
  for (const auto& x : w.x) out.x.push_back(p.transpose() * x * p);
  for (std::size_t j = 0; j < n; ++j) out.grading.push_back(j);
  return out;
}

std::vector<CycloNum> unit(std::size_t n, std::size_t i) {
  std::vector<CycloNum> v(n, CycloNum(0));
  v[i] = CycloNum(1);
  return v;
}

}  // namespace

TEST(BuildModule, MultiplicitiesAreUniform) {
  const auto m = qtl::build_module(zero_alpha(E1), qtl::pullback(E1, natural_regular(E1)));
  const auto r = qtl::weight_multiplicities(m, 4);
  EXPECT_TRUE(r.uniform);
  EXPECT_EQ(r.bound, 2u);
  EXPECT_EQ(r.multiplicity.size(), 81u);
  for (const auto& [s, k] : r.multiplicity) EXPECT_EQ(k, 2u);

  const auto m2 = qtl::build_module(zero_alpha(E2), qtl::pullback(E2, natural_regular(E2)));
  const auto r2 = qtl::weight_multiplicities(m2, 4);
  EXPECT_TRUE(r2.uniform);
  // dim V * max dim W_s = 2 * 1 for the natural gl_2-module.
  EXPECT_EQ(r2.bound, 2u);
}

TEST(BuildModule, ZeroModule) {
  const GRepresentation zero(E1, qtl::GradedVectorSpace(std::vector<std::size_t>(4, 0)), 1);
  const auto m = qtl::build_module(zero_alpha(E1), zero);
  const auto r = qtl::weight_multiplicities(m, 2);
  EXPECT_EQ(r.bound, 0u);
  for (const auto& [s, k] : r.multiplicity) EXPECT_EQ(k, 0u);
  EXPECT_TRUE(qtl::verify_module_axioms(m, 2, 20, 1).pass);
}

TEST(BuildModule, RejectsInvalidRepresentation) {
  auto rho = qtl::pullback(E1, natural_regular(E1));
  auto a = rho.act(GKey::xd({1, 0}, 1));
  a(1, 1) += CycloNum(3);
  rho.set(GKey::xd({1, 0}, 1), a);
  EXPECT_THROW(qtl::build_module(zero_alpha(E1), rho), qtl::InvalidRepresentation);
}

TEST(ModuleAction, DerivationExample) {
  const auto m = qtl::build_module(zero_alpha(E1), qtl::pullback(E1, natural_regular(E1)));
  // Label (1,1): class (1,1), no central shift; U_w = V (x) W_w has basis v1, v2.
  const auto [target, a] = m.act(DKey::deriv(0, {2, 0}), {1, 1});
  EXPECT_EQ(target, ExpVec({3, 1}));
  EXPECT_EQ(qtl::apply(a, unit(2, 1)), unit(2, 1));
  EXPECT_EQ(qtl::apply(a, unit(2, 0)), qtl::apply(CycloNum(3) * ExactMatrix::identity(2, E1.field()), unit(2, 0)));

  const qtl::WeightVector v{{1, 1}, {0, 0}, unit(2, 1)};
  const auto out = qtl::act_D(m, DKey::deriv(0, {2, 0}), v);
  EXPECT_EQ(out.class_label, ExpVec({1, 1}));
  EXPECT_EQ(out.central_shift, ExpVec({2, 0}));
  EXPECT_EQ(out.coords, unit(2, 1));
}

TEST(ModuleAction, CentralIsAFreeShift) {
  const auto m = qtl::build_module(generic_alpha(E1), qtl::pullback(E1, natural_regular(E1)));
  for (const auto& s : qtl::box_points(2, -2, 2)) {
    const auto [t, a] = m.act(DKey::central({2, 0}), s);
    EXPECT_EQ(t, s + ExpVec({2, 0}));
    EXPECT_TRUE(a.is_identity());
  }
  const qtl::WeightVector v{{1, 2}, {2, -2}, {CycloNum(5), CycloNum(-1)}};
  const auto out = qtl::act_D(m, DKey::central({2, 0}), v);
  EXPECT_EQ(out.class_label, v.class_label);
  EXPECT_EQ(out.central_shift, ExpVec({4, -2}));
  EXPECT_EQ(out.coords, v.coords);
}

TEST(ModuleAction, StrictBoxThrowsOutOfBox) {
  auto m = qtl::build_module(zero_alpha(E1), qtl::pullback(E1, natural_regular(E1)), 2);
  EXPECT_NO_THROW(m.act(DKey::inner({1, 0}), {5, 5}));
  m.set_lazy(false);
  EXPECT_THROW(m.act(DKey::inner({1, 0}), {5, 5}), qtl::OutOfBox);
  EXPECT_NO_THROW(m.act(DKey::inner({1, 0}), {2, -2}));
}

TEST(ModuleAxioms, FunctorImagePasses) {
  for (const auto& alpha : {zero_alpha(E1), generic_alpha(E1)}) {
    const auto m = qtl::build_module(alpha, qtl::pullback(E1, natural_regular(E1)));
    const auto r = qtl::verify_module_axioms(m, 3, 100, 7);
    EXPECT_TRUE(r.pass) << r.counterexample.value_or("");
    EXPECT_GE(r.pairs_checked, 100u);
  }
  const auto jet = qtl::build_module(generic_alpha(E1), qtl::jet_module(E1, 2), 2);
  EXPECT_TRUE(qtl::verify_module_axioms(jet, 2, 40, 3).pass);
}

TEST(ModuleAxioms, CorruptedRepresentationFails) {
  auto rho = qtl::pullback(E1, natural_regular(E1));
  // Column 0 lies in class (1,1); X^(1,2) sends it to class (2,1) at offset 4.
  auto a = rho.act(GKey::xt({0, 0}, {1, 2}));
  a(4, 0) += CycloNum(1);
  rho.set(GKey::xt({0, 0}, {1, 2}), a);
  const CuspidalModule m(CuspidalModule::Kind::FromRepresentation, zero_alpha(E1), rho, std::nullopt, 3);
  const auto r = qtl::verify_module_axioms(m, 3, 100, 7);
  EXPECT_FALSE(r.pass);
  EXPECT_TRUE(r.counterexample);
}

TEST(ModuleAxioms, SerialAndParallelAgree) {
  auto rho = qtl::pullback(E1, natural_regular(E1));
  const auto good = qtl::build_module(zero_alpha(E1), rho);
  auto a = rho.act(GKey::xd({0, 1}, 0));
  a(0, 1) += CycloNum(2);
  rho.set(GKey::xd({0, 1}, 0), a);
  const CuspidalModule bad(CuspidalModule::Kind::FromRepresentation, zero_alpha(E1), rho, std::nullopt, 2);
  for (const auto* m : {&good, &bad}) {
    const auto s = qtl::verify_module_axioms(*m, 2, 50, 11, qtl::Execution::Serial);
    const auto p = qtl::verify_module_axioms(*m, 2, 50, 11, qtl::Execution::Parallel);
    EXPECT_EQ(s.pass, p.pass);
    EXPECT_EQ(s.pairs_checked, p.pairs_checked);
    EXPECT_EQ(s.counterexample, p.counterexample);
    EXPECT_EQ(s.pass, m == &good);
  }
}

TEST(TensorField, Examples) {
  const auto f = qtl::tensor_field_module(E1, zero_alpha(E1), natural_regular(E1));
  const auto [t, a] = f.act(DKey::deriv(0, {2, 0}), {1, 1});
  EXPECT_EQ(t, ExpVec({3, 1}));
  EXPECT_EQ(qtl::apply(a, unit(2, 0)), std::vector<CycloNum>({CycloNum(3), CycloNum(0)}));

  // X^(1,0) X^(1,1) = X^(2,1), so t^(1,0) carries v (x) X^(1,1) to v (x) X^(2,1).
  const auto [t2, b] = f.act(DKey::inner({1, 0}), {1, 1});
  EXPECT_EQ(t2, ExpVec({2, 1}));
  EXPECT_TRUE(b.is_identity());
}

TEST(TensorField, RejectsInvalidData) {
  auto vw = natural_regular(E1);
  vw.w.x[1](0, 0) = CycloNum(7);
  EXPECT_THROW(qtl::tensor_field_module(E1, zero_alpha(E1), vw), qtl::InvalidModuleData);
}

TEST(TensorField, EqualsFunctorImage) {
  for (const auto* s : {&E1, &E2})
    for (const auto& alpha : {zero_alpha(*s), generic_alpha(*s)}) {
      const auto a = qtl::build_module(alpha, qtl::pullback(*s, natural_regular(*s)));
      const auto b = qtl::tensor_field_module(*s, alpha, natural_regular(*s));
      EXPECT_TRUE(qtl::modules_equal_on_box(a, b, 3));
      EXPECT_TRUE(qtl::weight_multiplicities(b, 4).uniform);
    }
}

TEST(TensorField, DifferentAlphaOrGradingIsDetected) {
  const auto a = qtl::build_module(zero_alpha(E1), qtl::pullback(E1, natural_regular(E1)));
  const auto b = qtl::tensor_field_module(E1, generic_alpha(E1), natural_regular(E1));
  EXPECT_FALSE(qtl::modules_equal_on_box(a, b, 3));
  const qtl::GLdGLNModule shifted{qtl::natural_gld(E1), shifted_regular(E1, {1, 0})};
  EXPECT_NO_THROW(qtl::validate(E1, shifted));
  const auto c = qtl::tensor_field_module(E1, zero_alpha(E1), shifted);
  EXPECT_FALSE(qtl::modules_equal_on_box(a, c, 3));
  const auto small = qtl::build_module(zero_alpha(E1), qtl::pullback(E1, {qtl::trivial_gld(E1), qtl::graded_regular_glN(E1)}));
  EXPECT_THROW(qtl::modules_equal_on_box(a, small, 2), qtl::DimensionMismatch);
}

TEST(Coefficients, ReadOffTheFunctorImage) {
  const auto rho = qtl::pullback(E1, natural_regular(E1));
  const auto alpha = generic_alpha(E1);
  const auto m = qtl::build_module(alpha, rho);
  const auto fam = qtl::operator_family(m, 3);
  const auto c = qtl::extract_coefficients(fam, E1, alpha);
  EXPECT_EQ(c.f.at({0, ExpVec({1, 0})}), rho.act(GKey::xd({1, 0}, 0)));
  const auto& f0 = c.f.at({0, ExpVec({0, 0})});
  for (std::size_t w = 0; w < 4; ++w) {
    const auto off = c.space.offset(w);
    const CycloNum expect = alpha[0] + CycloNum(static_cast<long>(E1.gamma0()[w][0]));
    EXPECT_EQ(f0.block(off, off, 2, 2), expect * ExactMatrix::identity(2, E1.field()));
  }
  for (const auto& w : E1.gamma0()) {
    EXPECT_EQ(c.g.at({w, ExpVec({0, 0})}), rho.act(GKey::xt({0, 0}, w)));
    for (const auto& [key, mat] : c.g)
      if (key.first == w && key.second.total() >= 1) EXPECT_TRUE(mat.is_zero());
  }
}

TEST(Coefficients, RoundTrip) {
  for (const auto& rho : {qtl::pullback(E1, natural_regular(E1)), qtl::jet_module(E1, 2)}) {
    const auto alpha = generic_alpha(E1);
    const auto m = qtl::build_module(alpha, rho);
    const auto back = qtl::coefficients_to_representation(qtl::extract_coefficients(qtl::operator_family(m, 3), E1, alpha));
    EXPECT_TRUE(qtl::representations_equal(back, rho));
    EXPECT_TRUE(qtl::verify_representation(back, 3).pass);
  }
}

TEST(Coefficients, ZeroAndCorrupted) {
  qtl::PolynomialCoefficients zero{E1, qtl::GradedVectorSpace(std::vector<std::size_t>(4, 0)), {}, {}};
  const auto z = qtl::coefficients_to_representation(zero);
  EXPECT_EQ(z.dim(), 0u);
  EXPECT_TRUE(z.actions().empty() || std::all_of(z.actions().begin(), z.actions().end(),
                                                 [](const auto& kv) { return kv.second.is_zero(); }));

  const auto alpha = zero_alpha(E1);
  const auto m = qtl::build_module(alpha, qtl::pullback(E1, natural_regular(E1)));
  auto c = qtl::extract_coefficients(qtl::operator_family(m, 3), E1, alpha);
  c.f.at({1, ExpVec({1, 0})})(0, 1) += CycloNum(1);
  EXPECT_THROW(qtl::coefficients_to_representation(c), qtl::RelationViolated);
}

TEST(Coefficients, DegreeBoundViolationIsDetected) {
  const auto alpha = zero_alpha(E1);
  const auto m = qtl::build_module(alpha, qtl::jet_module(E1, 3), 3);
  EXPECT_NO_THROW(qtl::extract_coefficients(qtl::operator_family(m, 3), E1, alpha));
  EXPECT_THROW(qtl::extract_coefficients(qtl::operator_family(m, 1), E1, alpha), qtl::DegreeBoundViolated);
}

TEST(Coefficients, ConstantTermMismatchIsDetected) {
  const auto m = qtl::build_module(zero_alpha(E1), qtl::pullback(E1, natural_regular(E1)));
  EXPECT_THROW(qtl::extract_coefficients(qtl::operator_family(m, 3), E1, generic_alpha(E1)), qtl::ConstantTermMismatch);
}

TEST(OperatorFamily, CommutationRelations) {
  for (const auto& rho : {qtl::pullback(E1, natural_regular(E1)), qtl::jet_module(E1, 2)}) {
    const auto m = qtl::build_module(generic_alpha(E1), rho);
    const auto r = qtl::verify_operator_relations(qtl::operator_family(m), E1, 2, 150, 5);
    EXPECT_TRUE(r.pass) << r.counterexample.value_or("");
    EXPECT_GE(r.checked, 150u);
  }
  const auto m2 = qtl::build_module(generic_alpha(E2), qtl::pullback(E2, natural_regular(E2)));
  EXPECT_TRUE(qtl::verify_operator_relations(qtl::operator_family(m2), E2, 2, 100, 6).pass);
}

TEST(OperatorFamily, CentralShiftOperators) {
  const auto m = qtl::build_module(zero_alpha(E1), qtl::pullback(E1, natural_regular(E1)));
  const auto fam = qtl::operator_family(m);
  // L(m, r) for r in R is the identity label shift.
  for (const auto& n : qtl::box_points(2, -2, 2)) EXPECT_TRUE(fam.l(2 * n, E1.central_class()).is_identity());
}

TEST(Irreducibility, BoxEvidence) {
  for (const auto& alpha : {zero_alpha(E1), generic_alpha(E1)}) {
    const auto m = qtl::tensor_field_module(E1, alpha, natural_regular(E1));
    const auto ev = qtl::box_irreducibility_evidence(m, 2);
    EXPECT_EQ(ev.commutant_dim, 1u);
    EXPECT_TRUE(ev.cyclic) << ev.non_cyclic_vector.value_or("");
  }
  const auto rho = qtl::pullback(E1, natural_regular(E1));
  const auto sum = qtl::build_module(zero_alpha(E1), qtl::direct_sum(rho, rho), 2);
  const auto ev = qtl::box_irreducibility_evidence(sum, 2);
  EXPECT_EQ(ev.commutant_dim, 4u);
  EXPECT_FALSE(ev.cyclic);
}

TEST(Symbols, BoxContents) {
  const auto syms = qtl::symbols_in_box(E1, 2);
  std::size_t deriv = 0, inner = 0, central = 0;
  for (const auto& k : syms) {
    EXPECT_NO_THROW(qtl::validate_key(E1, k));
    deriv += k.kind == DKey::Kind::Deriv;
    inner += k.kind == DKey::Kind::Inner;
    central += k.kind == DKey::Kind::Central;
  }
  // R meets [-2,2]^2 in 9 points; the other 16 exponents are inner.
  EXPECT_EQ(deriv, 18u);
  EXPECT_EQ(central, 9u);
  EXPECT_EQ(inner, 16u);
}
