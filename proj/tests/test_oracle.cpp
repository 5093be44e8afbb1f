// Self-tests of the exact rational reference used by the spectral and
// restricted property suites.

#include <gtest/gtest.h>

#include "exact.hpp"
#include "support.hpp"

using namespace testing_support;
using oracle::QPoly;

namespace {

QPoly q(std::initializer_list<long> cs) {
  QPoly p;
  for (long c : cs) p.emplace_back(c);
  return oracle::trim(p);
}

const oracle::Family* family_with_root(const oracle::Structure& s, cdouble z) {
  for (const auto& f : s.finite)
    for (const auto& r : f.roots)
      if (std::abs(r - z) < 1e-9) return &f;
  return nullptr;
}

}  // namespace

TEST(ExactOracle, PolynomialArithmetic) {
  const QPoly a = q({-1, 1});  // s - 1
  const QPoly b = q({2, 1});   // s + 2
  const QPoly p = oracle::mul(oracle::mul(a, a), b);
  EXPECT_EQ(p, q({2, -3, 0, 1}));
  QPoly quo, rem;
  oracle::divmod(p, a, quo, rem);
  EXPECT_TRUE(rem.empty());
  EXPECT_EQ(quo, oracle::mul(a, b));
  EXPECT_EQ(oracle::gcd(p, oracle::mul(a, q({5, 1}))), a);
}

TEST(ExactOracle, SquarefreeDecomposition) {
  const QPoly a = q({-1, 1}), b = q({2, 1});
  const auto parts = oracle::squarefree_decomposition(oracle::mul(oracle::mul(a, a), b));
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].first, b);
  EXPECT_EQ(parts[0].second, 1);
  EXPECT_EQ(parts[1].first, a);
  EXPECT_EQ(parts[1].second, 2);
}

TEST(ExactOracle, DeterminantPolynomial) {
  const auto E = oracle::to_rational(eye(2));
  const auto A = oracle::to_rational(diag({1.0, 2.0}));
  EXPECT_EQ(oracle::det_poly(E, A), q({2, -3, 1}));
  // sN - I has constant determinant 1
  EXPECT_EQ(oracle::det_poly(oracle::to_rational(jordan(2, 0.0)), oracle::to_rational(eye(2))),
            q({1}));
}

TEST(ExactOracle, JordanBlockTower) {
  const auto s = oracle::analyze(eye(2), jordan(2, 0.0));
  ASSERT_EQ(s.finite.size(), 1u);
  EXPECT_EQ(s.finite[0].tower, (std::vector<int>{1, 2}));
  EXPECT_EQ(s.finite[0].segre, (std::vector<int>{2}));
  EXPECT_EQ(s.inf_mult, 0);
}

TEST(ExactOracle, InfiniteStructure) {
  const auto s = oracle::analyze(jordan(2, 0.0), eye(2));
  EXPECT_TRUE(s.finite.empty());
  EXPECT_EQ(s.inf_mult, 2);
  EXPECT_EQ(s.inf_tower, (std::vector<int>{1, 2}));
  EXPECT_EQ(s.inf_segre, (std::vector<int>{2}));
}

TEST(ExactOracle, MixedBlocks) {
  const auto s = oracle::analyze(eye(4), block_diag({jordan(2, 0.0), jordan(1, 0.0),
                                                     jordan(1, 3.0)}));
  const auto* zero = family_with_root(s, 0.0);
  const auto* three = family_with_root(s, 3.0);
  ASSERT_NE(zero, nullptr);
  ASSERT_NE(three, nullptr);
  EXPECT_EQ(zero->tower, (std::vector<int>{2, 3}));
  EXPECT_EQ(zero->segre, (std::vector<int>{2, 1}));
  EXPECT_EQ(three->segre, (std::vector<int>{1}));
}

TEST(ExactOracle, SplitsFamiliesWithDifferentChains) {
  // (s-1)^2 (s-2)^2: one chain at 1, two chains at 2
  const auto s = oracle::analyze(eye(4), block_diag({jordan(2, 1.0), diag({2.0, 2.0})}));
  ASSERT_EQ(s.finite.size(), 2u);
  const auto* one = family_with_root(s, 1.0);
  const auto* two = family_with_root(s, 2.0);
  ASSERT_NE(one, nullptr);
  ASSERT_NE(two, nullptr);
  EXPECT_EQ(one->segre, (std::vector<int>{2}));
  EXPECT_EQ(two->segre, (std::vector<int>{1, 1}));
}

TEST(ExactOracle, IrreducibleQuadratic) {
  const auto s = oracle::analyze(eye(2), mat({{0.0, -1.0}, {1.0, 0.0}}));
  ASSERT_EQ(s.finite.size(), 1u);
  EXPECT_EQ(s.finite[0].g, q({1, 0, 1}));
  EXPECT_EQ(s.finite[0].segre, (std::vector<int>{1}));
  EXPECT_NE(family_with_root(s, cdouble(0.0, 1.0)), nullptr);
}

TEST(ExactOracle, RejectsNonIntegerAndSingular) {
  EXPECT_THROW(oracle::analyze(eye(1), mat({{0.5}})), std::invalid_argument);
  EXPECT_THROW(oracle::analyze(mat({{1.0, 1.0}, {1.0, 1.0}}), mat({{1.0, 1.0}, {1.0, 1.0}})),
               std::invalid_argument);
}

TEST(ExactOracle, PoleOrdersOfJordanBlock) {
  const Matrix J = jordan(2, 0.0);
  const Vector zero = Vector::Zero(2);
  EXPECT_EQ(oracle::pole_orders(eye(2), J, zero, unit(2, 1)).finite.at(0).order, 2);
  EXPECT_EQ(oracle::pole_orders(eye(2), J, zero, unit(2, 0)).finite.at(0).order, 1);
  EXPECT_EQ(oracle::pole_orders(eye(2), J, zero, zero).finite.at(0).order, 0);
  // s u + v = s e1 - 0: (sI - J)^{-1} s e1 = e1, no pole
  EXPECT_EQ(oracle::pole_orders(eye(2), J, unit(2, 0), zero).finite.at(0).order, 0);
}

TEST(ExactOracle, PoleOrderAtInfinity) {
  // (-sI + J)^{-1}(s v + u) at 0 with u = e2, v = 0
  const Vector zero = Vector::Zero(2);
  EXPECT_EQ(oracle::pole_orders(jordan(2, 0.0), eye(2), unit(2, 1), zero).inf_order, 2);
  EXPECT_EQ(oracle::pole_orders(jordan(2, 0.0), eye(2), unit(2, 0), zero).inf_order, 1);
  EXPECT_EQ(oracle::pole_orders(jordan(2, 0.0), eye(2), zero, unit(2, 1)).inf_order, 1);
}
