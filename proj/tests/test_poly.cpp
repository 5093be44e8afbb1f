#include <gtest/gtest.h>

#include <random>

#include "exact.hpp"
#include "rankone/errors.hpp"
#include "rankone/generators.hpp"
#include "rankone/poly.hpp"
#include "support.hpp"

using namespace rankone;
using namespace testing_support;

namespace {

double coeff_distance(const Polynomial& a, const Polynomial& b) {
  const int count = std::max(a.degree(), b.degree()) + 1;
  double d = 0.0;
  for (int k = 0; k < count; ++k) d = std::max(d, std::abs(a.coeff(k) - b.coeff(k)));
  return d;
}

// roots sorted by (re, im) for comparison
std::vector<std::pair<cdouble, int>> sorted(RootMultiset rs) {
  std::sort(rs.roots.begin(), rs.roots.end(), [](const auto& x, const auto& y) {
    if (std::abs(x.first.real() - y.first.real()) > 1e-6) return x.first.real() < y.first.real();
    return x.first.imag() < y.first.imag();
  });
  return rs.roots;
}

}  // namespace

TEST(Interpolate, ConstantCase) {
  const std::vector<cdouble> nodes{0.0, 1.0}, values{1.0, 1.0};
  const Polynomial p = interpolate(nodes, values).trimmed(1e-14);
  EXPECT_EQ(p.degree(), 0);
  EXPECT_NEAR(std::abs(p.coeff(0) - 1.0), 0.0, 1e-14);
}

TEST(Interpolate, EvenMonomial) {
  const std::vector<cdouble> nodes{0.0, 1.0, -1.0}, values{0.0, 1.0, 1.0};
  const Polynomial p = interpolate(nodes, values);
  EXPECT_LT(coeff_distance(p, Polynomial::monomial(2)), 1e-14);
}

TEST(Interpolate, DuplicateNodesRejected) {
  const std::vector<cdouble> nodes{1.0, 1.0}, values{0.0, 1.0};
  try {
    interpolate(nodes, values);
    FAIL() << "expected DuplicateNodes";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kDuplicateNodes);
  }
}

TEST(Interpolate, CharacteristicPolynomialFromUnitRoots) {
  gen::Rng rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    const Matrix E = gen::integer_matrix(rng, 3, 3, -3, 3);
    const Matrix A = gen::integer_matrix(rng, 3, 3, -3, 3);
    const auto nodes = circle_nodes(4, 1.0);
    std::vector<cdouble> values;
    for (auto s : nodes) values.push_back((s * E - A).determinant());
    const Polynomial p = interpolate(nodes, values);
    const auto exact = oracle::det_poly(oracle::to_rational(E), oracle::to_rational(A));
    for (int k = 0; k <= 3; ++k) {
      const double want = k < static_cast<int>(exact.size()) ? exact[k].get_d() : 0.0;
      EXPECT_NEAR(std::abs(p.coeff(k) - want), 0.0, 1e-10) << "trial " << trial << " k " << k;
    }
  }
}

TEST(Interpolate, ReproducesRandomPolynomials) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> d(0.0, 10.0);
  for (int deg = 0; deg <= 12; ++deg) {
    std::vector<cdouble> c;
    for (int k = 0; k <= deg; ++k) c.emplace_back(d(rng), d(rng));
    const Polynomial p(c);
    const double radius = 1.0 + p.norm_inf() / 100.0;
    const auto nodes = circle_nodes(deg + 1, radius);
    std::vector<cdouble> values;
    for (auto s : nodes) values.push_back(p(s));
    EXPECT_LT(coeff_distance(interpolate(nodes, values), p), 1e-10 * p.norm_inf());
    EXPECT_LT(coeff_distance(interpolate_on_circle(values, radius), p), 1e-10 * p.norm_inf());
  }
}

TEST(Roots, FactoredInput) {
  const auto r = sorted(roots_with_multiplicity(Polynomial({-1.0, 0.0, 1.0})));
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(std::abs(r[0].first + 1.0), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r[1].first - 1.0), 0.0, 1e-12);
  EXPECT_EQ(r[0].second, 1);
  EXPECT_EQ(r[1].second, 1);
}

TEST(Roots, TripleRoot) {
  const Polynomial p = Polynomial::linear_factor(2.0) * Polynomial::linear_factor(2.0) *
                       Polynomial::linear_factor(2.0);
  const auto r = roots_with_multiplicity(p);
  ASSERT_EQ(r.roots.size(), 1u);
  EXPECT_NEAR(std::abs(r.roots[0].first - 2.0), 0.0, 1e-8);
  EXPECT_EQ(r.roots[0].second, 3);
}

TEST(Roots, IntegerMultiset) {
  Polynomial p = Polynomial::constant(1.0);
  for (double z : {0.0, 0.0, 1.0, 3.0, 3.0}) p = p * Polynomial::linear_factor(z);
  const auto r = sorted(roots_with_multiplicity(p));
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].second, 2);
  EXPECT_EQ(r[1].second, 1);
  EXPECT_EQ(r[2].second, 2);
  EXPECT_NEAR(std::abs(r[0].first), 0.0, 1e-6);
  EXPECT_NEAR(std::abs(r[1].first - 1.0), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(r[2].first - 3.0), 0.0, 1e-6);
}

TEST(Roots, ZeroPolynomialRejected) {
  try {
    roots_with_multiplicity(Polynomial());
    FAIL() << "expected ZeroPolynomial";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroPolynomial);
  }
}

TEST(PolyFromRoots, Examples) {
  RootMultiset double_zero;
  double_zero.roots = {{0.0, 2}};
  EXPECT_LT(coeff_distance(poly_from_roots(double_zero, 1.0), Polynomial::monomial(2)), 1e-15);

  RootMultiset pm;
  pm.roots = {{1.0, 1}, {-1.0, 1}};
  EXPECT_LT(coeff_distance(poly_from_roots(pm, 3.0), Polynomial({-3.0, 0.0, 3.0})), 1e-15);
}

TEST(PolyFromRoots, RebuildsMinimalPolynomialFromSegreData) {
  const Pencil p = standard(block_diag({jordan(2, 0.0), jordan(1, 0.0), jordan(1, 3.0)}));
  const SpectralData sd = eig_structure(p);
  const Polynomial rebuilt = poly_from_roots(roots_with_multiplicity(sd.m_A), 1.0);
  EXPECT_LT(coeff_distance(rebuilt, sd.m_A), 1e-8);
  const Polynomial expected = Polynomial::monomial(2) * Polynomial::linear_factor(3.0);
  EXPECT_LT(coeff_distance(sd.m_A, expected), 1e-8);
}

TEST(PolyFromRoots, RoundTripOnSeparatedIntegerRoots) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> root(-6, 6), mult(1, 3), count(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    RootMultiset want;
    const int k = count(rng);
    while (static_cast<int>(want.roots.size()) < k) {
      const double z = root(rng);
      bool dup = false;
      for (auto& [r, m] : want.roots) dup |= r.real() == z;
      if (!dup) want.roots.push_back({z, mult(rng)});
    }
    const cdouble lead(2.0, -1.0);
    const Polynomial p = poly_from_roots(want, lead);
    const Polynomial back = poly_from_roots(roots_with_multiplicity(p), p.leading());
    EXPECT_LT(coeff_distance(back, p), 1e-8 * p.norm_inf()) << "trial " << trial;
    EXPECT_EQ(roots_with_multiplicity(p).total(), want.total());
  }
}

TEST(PolynomialType, DegreeOfProduct) {
  const Polynomial a({1.0, 2.0, 3.0}), b({0.0, 1.0});
  EXPECT_EQ((a * b).degree(), a.degree() + b.degree());
  EXPECT_TRUE(Polynomial().is_zero());
  EXPECT_EQ(Polynomial({1.0, 0.0, 0.0}).degree(), 0);
}

TEST(PolynomialType, SyntheticDivision) {
  const Polynomial p = Polynomial::linear_factor(2.0) * Polynomial({1.0, 1.0});
  const auto d = p.divide_linear(2.0);
  EXPECT_NEAR(std::abs(d.remainder), 0.0, 1e-15);
  EXPECT_LT(coeff_distance(d.quotient, Polynomial({1.0, 1.0})), 1e-15);
}
