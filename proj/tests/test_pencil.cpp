#include <gtest/gtest.h>

#include "exact.hpp"
#include "rankone/errors.hpp"
#include "rankone/generators.hpp"
#include "rankone/pencil.hpp"
#include "rankone/spectral.hpp"
#include "support.hpp"

using namespace rankone;
using namespace testing_support;

namespace {

// P1(s) = [[s+1, s+1], [1, 1]]
Pencil p1() { return Pencil(mat({{1.0, 1.0}, {0.0, 0.0}}), mat({{-1.0, -1.0}, {-1.0, -1.0}})); }

}  // namespace

TEST(Evaluate, Examples) {
  EXPECT_TRUE(evaluate(Pencil(eye(2), Matrix::Zero(2, 2)), 3.0).isApprox(3.0 * eye(2)));
  EXPECT_EQ(evaluate(p1(), 0.0), mat({{1.0, 1.0}, {1.0, 1.0}}));
  gen::Rng rng(1);
  const Matrix E = gen::integer_matrix(rng, 4, 4, -3, 3);
  const Matrix A = gen::integer_matrix(rng, 4, 4, -3, 3);
  const Matrix m = evaluate(Pencil(E, A), 2.0);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) EXPECT_EQ(m(i, j), 2.0 * E(i, j) - A(i, j));
}

TEST(Pencil, RejectsMismatchedSizes) {
  try {
    Pencil(eye(2), eye(3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidInput);
  }
  EXPECT_TRUE(Pencil(eye(2), eye(2)).is_real());
  EXPECT_FALSE(Pencil(eye(2), cdouble(0.0, 1.0) * eye(2)).is_real());
}

TEST(CharPoly, Examples) {
  const CharPoly c = char_poly(standard(diag({1.0, 2.0})));
  EXPECT_EQ(c.finite_degree, 2);
  EXPECT_NEAR(std::abs(c.det_poly.coeff(0) - 2.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.det_poly.coeff(1) + 3.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(c.det_poly.coeff(2) - 1.0), 0.0, 1e-12);

  const CharPoly nil = char_poly(Pencil(jordan(2, 0.0), eye(2)));
  EXPECT_EQ(nil.finite_degree, 0);
  EXPECT_NEAR(std::abs(nil.det_poly.coeff(0) - 1.0), 0.0, 1e-12);

  EXPECT_TRUE(char_poly(p1()).det_poly.is_zero());
}

TEST(CharPoly, MatchesCofactorExpansion) {
  gen::Rng rng(2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const Pencil p = gen::integer_pencil(rng, n, -3, 3, 0.3);
    const auto exact = oracle::det_poly(oracle::to_rational(p.E()), oracle::to_rational(p.A()));
    const CharPoly c = char_poly(p);
    EXPECT_EQ(c.finite_degree, oracle::degree(exact)) << "trial " << trial;
    const double scale = std::pow(p.scale(), n);
    for (int k = 0; k <= n; ++k) {
      const double want = k < static_cast<int>(exact.size()) ? exact[k].get_d() : 0.0;
      EXPECT_NEAR(std::abs(c.det_poly.coeff(k) - want), 0.0, 1e-11 * scale);
    }
  }
}

TEST(IsRegular, Examples) {
  EXPECT_TRUE(is_regular(Pencil(eye(2), Matrix::Zero(2, 2))));
  EXPECT_FALSE(is_regular(Pencil(Matrix::Zero(1, 1), Matrix::Zero(1, 1))));
  EXPECT_FALSE(is_regular(p1()));
}

TEST(Dualize, Examples) {
  const Pencil d = dualize(Pencil(eye(2), Matrix::Zero(2, 2)));
  EXPECT_EQ(d.E(), Matrix::Zero(2, 2));
  EXPECT_EQ(d.A(), -eye(2));

  const Pencil nd = dualize(Pencil(jordan(2, 0.0), eye(2)));
  EXPECT_EQ(nd.E(), -eye(2));
  EXPECT_EQ(nd.A(), -jordan(2, 0.0));
  EXPECT_EQ(nullity_tower(nd, 0.0, 2), (std::vector<int>{1, 2}));

  const CharPoly c = char_poly(dualize(standard(mat({{2.0}}))));
  ASSERT_EQ(c.finite_degree, 1);
  EXPECT_NEAR(std::abs(-c.det_poly.coeff(0) / c.det_poly.coeff(1) - 0.5), 0.0, 1e-12);
}

TEST(Dualize, Involution) {
  gen::Rng rng(4);
  const Pencil p = gen::integer_pencil(rng, 3);
  const Pencil back = dualize(dualize(p));
  EXPECT_EQ(back.E(), p.E());
  EXPECT_EQ(back.A(), p.A());
}

TEST(PencilProperties, DegreeAndDimensionCount) {
  gen::Rng rng(6);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 2 + trial % 4;
    const Pencil p = gen::integer_pencil(rng, n, -3, 3, 0.4);
    const CharPoly c = char_poly(p);
    const bool e_invertible = std::abs(p.E().determinant()) > 0.5;
    EXPECT_LE(c.finite_degree, n);
    EXPECT_EQ(c.finite_degree == n, e_invertible) << "trial " << trial;

    const SpectralData sd = eig_structure(p);
    const int inf_dim = sd.infinity() ? sd.infinity()->root_dim : 0;
    EXPECT_EQ(c.finite_degree + inf_dim, n);

    const SpectralData dual = eig_structure(dualize(p));
    const auto* zero = dual.find(0.0, 1e-6);
    if (sd.infinity()) {
      ASSERT_NE(zero, nullptr);
      EXPECT_EQ(zero->segre, sd.infinity()->segre);
    } else {
      EXPECT_EQ(zero, nullptr);
    }
  }
}
