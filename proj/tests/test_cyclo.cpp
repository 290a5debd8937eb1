#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracle.hpp"
#include "qtl/cyclo.hpp"
#include "qtl/errors.hpp"

using qtl::CycloField;
using qtl::CycloNum;
using qtl::Rational;

namespace {

CycloNum random_element(const CycloField& f, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-6, 6), den(1, 4);
  std::vector<Rational> c;
  for (int j = 0; j < f.degree(); ++j) c.emplace_back(num(rng), den(rng));
  for (auto& r : c) r.canonicalize();
  return CycloNum(f, c);
}

}  // namespace

TEST(CycloField, DegenerateAndSmallFields) {
  EXPECT_EQ(CycloField::get(1).degree(), 1);
  EXPECT_EQ(CycloField::get(2).degree(), 1);
  EXPECT_EQ(CycloNum::root_of_unity(CycloField::get(2), 1), CycloNum(-1));
  EXPECT_EQ(CycloField::get(12).degree(), 4);
}

TEST(CycloField, TotientMatchesCount) {
  for (int n = 1; n <= 60; ++n) {
    int count = 0;
    for (int j = 1; j <= n; ++j) count += std::gcd(j, n) == 1;
    EXPECT_EQ(qtl::euler_phi(n), count) << n;
    EXPECT_EQ(CycloField::get(n).degree(), count) << n;
  }
}

TEST(CycloField, CyclotomicPolynomialVanishesAtPrimitiveRoot) {
  for (int n = 1; n <= 30; ++n) {
    const auto phi = qtl::cyclotomic_polynomial(n);
    std::complex<double> v = 0;
    for (std::size_t j = 0; j < phi.size(); ++j)
      v += static_cast<double>(phi[j]) * std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(j) / n);
    EXPECT_LT(std::abs(v), 1e-9) << n;
  }
}

TEST(CycloNum, RootsOfUnity) {
  const auto& f3 = CycloField::get(3);
  EXPECT_EQ(CycloNum::root_of_unity(f3, 1) + CycloNum::root_of_unity(f3, 2), CycloNum(-1));
  EXPECT_EQ(CycloNum::root_of_unity(CycloField::get(4), 2), CycloNum(-1));
  EXPECT_EQ(CycloNum::root_of_unity(f3, 1) * CycloNum::root_of_unity(f3, 2), CycloNum(1));
  EXPECT_EQ(CycloNum::root_of_unity(f3, -1), CycloNum::root_of_unity(f3, 2));
}

TEST(CycloNum, ProductAndQuotientAtFour) {
  const auto& f = CycloField::get(4);
  const CycloNum i = CycloNum::root_of_unity(f, 1);
  const CycloNum one(f, 1);
  EXPECT_EQ((one + i) * (one - i), CycloNum(2));
  EXPECT_EQ(one / (one + i), (one - i) / CycloNum(2));
  EXPECT_TRUE(oracle::close(oracle::embed(one / (one + i)), std::complex<double>(0.5, -0.5)));
}

TEST(CycloNum, DivisionByZeroThrows) {
  const auto& f = CycloField::get(5);
  EXPECT_THROW(CycloNum(f, 1) / CycloNum(f, 0), qtl::DivisionByZero);
  EXPECT_THROW(CycloNum(f, 0).inverse(), qtl::DivisionByZero);
}

TEST(CycloNum, MixedFieldsRejected) {
  const CycloNum a = CycloNum::root_of_unity(CycloField::get(3), 1);
  const CycloNum b = CycloNum::root_of_unity(CycloField::get(5), 1);
  EXPECT_THROW(a + b, qtl::FieldMismatch);
  EXPECT_EQ(a * CycloNum(2), a + a);
}

TEST(CycloNum, InverseRootsExhaustive) {
  for (int L = 1; L <= 24; ++L) {
    const auto& f = CycloField::get(L);
    for (int j = 0; j < L; ++j)
      EXPECT_EQ(CycloNum::root_of_unity(f, j) * CycloNum::root_of_unity(f, L - j), CycloNum(1)) << L << " " << j;
    EXPECT_EQ(CycloNum::root_of_unity(f, 1).pow(L), CycloNum(1));
  }
}

TEST(CycloNum, FieldAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int L : {3, 5, 8, 12}) {
    const auto& f = CycloField::get(L);
    for (int t = 0; t < 40; ++t) {
      const auto a = random_element(f, rng), b = random_element(f, rng), c = random_element(f, rng);
      EXPECT_EQ((a * b) * c, a * (b * c));
      EXPECT_EQ(a * (b + c), a * b + a * c);
      EXPECT_EQ(a + b, b + a);
      EXPECT_EQ(a * b, b * a);
      if (!a.is_zero()) EXPECT_EQ(a * a.inverse(), CycloNum(f, 1));
      EXPECT_TRUE(oracle::close(oracle::embed(a * b), oracle::embed(a) * oracle::embed(b)));
      EXPECT_TRUE(oracle::close(oracle::embed(a + b), oracle::embed(a) + oracle::embed(b)));
    }
  }
}

TEST(CycloNum, CanonicalFormIsIdempotent) {
  std::mt19937_64 rng(11);
  const auto& f = CycloField::get(9);
  for (int t = 0; t < 30; ++t) {
    const auto a = random_element(f, rng) * random_element(f, rng);
    const std::vector<Rational> c(a.coeffs().begin(), a.coeffs().end());
    EXPECT_EQ(static_cast<int>(c.size()), f.degree());
    const CycloNum again(f, c);
    EXPECT_TRUE(std::equal(c.begin(), c.end(), again.coeffs().begin()));
  }
  // x^L - 1 reduces to zero.
  std::vector<Rational> xl(10, Rational(0));
  xl[0] = -1;
  xl[9] = 1;
  EXPECT_TRUE(CycloNum(f, xl).is_zero());
}

TEST(CycloNum, TextRoundTripIsExact) {
  std::mt19937_64 rng(3);
  for (int L : {1, 4, 7, 12}) {
    const auto a = random_element(CycloField::get(L), rng);
    const auto text = a.to_string();
    EXPECT_EQ(text.substr(0, text.find(':')), std::to_string(L));
    const auto back = CycloNum::parse(text);
    EXPECT_EQ(back, a);
    EXPECT_EQ(back.to_string(), text);
  }
  EXPECT_EQ(CycloNum::parse("3/4"), CycloNum(Rational(3, 4)));
  EXPECT_EQ(CycloNum::parse("4:[0/1,1/1]").to_string(), "4:[0/1,1/1]");
  EXPECT_THROW(CycloNum::parse("4:[1/0]"), qtl::ParseError);
  EXPECT_THROW(CycloNum::parse("abc"), qtl::ParseError);
}
