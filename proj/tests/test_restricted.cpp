#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>

#include "compare.hpp"
#include "exact.hpp"
#include "rankone/errors.hpp"
#include "rankone/generators.hpp"
#include "rankone/restricted.hpp"
#include "support.hpp"

using namespace rankone;
using namespace testing_support;

namespace {

std::vector<cdouble> matrix_eigenvalues(const Matrix& m) {
  Eigen::ComplexEigenSolver<Matrix> es(m);
  std::vector<cdouble> out(es.eigenvalues().data(), es.eigenvalues().data() + m.rows());
  std::sort(out.begin(), out.end(), [](cdouble x, cdouble y) {
    return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
  });
  return out;
}

bool contains(const std::vector<ExtComplex>& xs, const ExtComplex& z) {
  for (const auto& x : xs)
    if (near(x, z, 1e-8)) return true;
  return false;
}

}  // namespace

TEST(PoleProfile, JordanBlockExamples) {
  const Pencil a = standard(jordan(2, 0.0));
  const Vector zero = Vector::Zero(2);
  const PoleProfile p2 = pole_profile(a, zero, unit(2, 1));
  ASSERT_EQ(p2.entries.size(), 1u);
  EXPECT_EQ(p2.entries[0].order, 2);
  EXPECT_EQ(p2.M_uv, 2);
  EXPECT_EQ(pole_profile(a, zero, unit(2, 0)).entries[0].order, 1);
  const PoleProfile none = pole_profile(a, zero, zero);
  EXPECT_EQ(none.entries[0].order, 0);
  EXPECT_EQ(none.M_uv, 0);
  EXPECT_EQ(none.m_tilde.trimmed(1e-12).degree(), 0);
}

TEST(PoleProfile, MatchesExactResolvent) {
  gen::Rng rng(61);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 2;
    const Pencil a = gen::integer_pencil(rng, n, -3, 3, 0.5);
    const Vector u = trial % 3 == 0 ? Vector(Vector::Zero(n)) : gen::integer_vector(rng, n, -2, 2, 0.5);
    const Vector v = gen::integer_vector(rng, n, -2, 2, 0.5);
    const PoleProfile prof = pole_profile(a, u, v);
    const SpectralData sd = eig_structure(a);
    int sum = 0;
    for (const auto& e : prof.entries) {
      EXPECT_GE(e.order, 0);
      EXPECT_LE(e.order, e.m1);
      sum += e.order;
    }
    EXPECT_EQ(sum, prof.M_uv);
    EXPECT_LE(prof.M_uv, sd.M);
    const auto diffs = oracle::compare_pole_orders(prof, oracle::pole_orders(a.E(), a.A(), u, v));
    for (const auto& d : diffs) ADD_FAILURE() << "trial " << trial << ": " << d;
    mismatches += static_cast<int>(diffs.size());
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(SpectrumFloor, Examples) {
  const Pencil a = standard(jordan(2, 0.0));
  const Vector zero = Vector::Zero(2);
  EXPECT_TRUE(spectrum_floor(a, zero, unit(2, 1)).empty());
  const auto floor = spectrum_floor(a, zero, unit(2, 0));
  ASSERT_EQ(floor.size(), 1u);
  EXPECT_TRUE(near(floor[0], 0.0, 1e-9));
  const auto two = spectrum_floor(standard(diag({1.0, 1.0, 2.0})), unit(3, 0), vec({1.0, 2.0, 3.0}));
  EXPECT_TRUE(contains(two, 1.0));
}

TEST(SpectrumFloor, PersistsUnderRandomW) {
  gen::Rng rng(62);
  int instances = 0;
  for (int trial = 0; instances < 6 && trial < 100; ++trial) {
    const int n = 3;
    const Pencil a = gen::integer_pencil(rng, n, -2, 2, 0.6);
    const Vector u = gen::integer_vector(rng, n, -1, 1, 0.6);
    const Vector v = gen::integer_vector(rng, n, -1, 1, 0.5);
    const auto floor = spectrum_floor(a, u, v);
    if (floor.empty()) continue;
    ++instances;
    std::normal_distribution<double> d;
    for (int k = 0; k < 100; ++k) {
      Vector w(n);
      for (int i = 0; i < n; ++i) w(i) = cdouble(d(rng), d(rng));
      const Pencil b = perturb(a, RankOnePencil::left(u, v, w));
      if (!is_regular(b)) continue;
      const SpectralData after = eig_structure(b);
      for (const auto& z : floor)
        EXPECT_NE(after.find(z, 1e-5), nullptr) << "trial " << trial << " at " << to_string(z);
    }
  }
  EXPECT_GT(instances, 0);
}

TEST(RestrictedBounds, ZeroWLeavesPencilUnchanged) {
  const Pencil a = standard(block_diag({jordan(2, 0.0), jordan(1, 3.0)}));
  const Vector u = unit(3, 2), v = vec({0.0, 1.0, 1.0});
  const BoundsReport r = check_restricted_bounds(a, u, v, Vector::Zero(3));
  EXPECT_TRUE(r.overall_pass());
  for (const auto& rec : r.records)
    if (rec.check == checks::kRootDim) EXPECT_EQ(rec.before, rec.after);
}

TEST(SolveW, JordanBlockFullBudget) {
  const Pencil a = standard(jordan(2, 0.0));
  const PlacementResult res =
      solve_w(a, Vector::Zero(2), unit(2, 1), targets({{1.0, 1}, {-1.0, 1}}));
  ASSERT_TRUE(res.verified);
  const auto ev = matrix_eigenvalues(perturb(a, res.perturbation).A());
  EXPECT_NEAR(std::abs(ev[0] + 1.0), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(ev[1] - 1.0), 0.0, 1e-9);
  EXPECT_TRUE(check_restricted_bounds(a, Vector::Zero(2), unit(2, 1), res.perturbation.w)
                  .overall_pass());
}

TEST(SolveW, DeficientPoleOrderKeepsEigenvalue) {
  const Pencil a = standard(jordan(2, 0.0));
  const PlacementResult res = solve_w(a, Vector::Zero(2), unit(2, 0), targets({{5.0, 1}}));
  ASSERT_TRUE(res.verified);
  EXPECT_EQ(dim_at(res.achieved, 0.0), 1);
  EXPECT_EQ(dim_at(res.achieved, 5.0), 1);
}

TEST(SolveW, ForbiddenPointRejected) {
  const Pencil a = standard(jordan(2, 0.0));
  try {
    solve_w(a, unit(2, 0), -3.0 * unit(2, 0), targets({{3.0, 1}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kHypothesisViolated);
  }
}

TEST(SolveW, BudgetMismatch) {
  try {
    solve_w(standard(jordan(2, 0.0)), Vector::Zero(2), unit(2, 0), targets({{5.0, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kBudgetMismatch);
  }
}

TEST(SolveW, RandomInstancesSatisfyBounds) {
  gen::Rng rng(63);
  int ok = 0, unverified = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + trial % 4;
    const Pencil a = gen::integer_pencil(rng, n, -3, 3, 0.3);
    const Vector u = gen::integer_vector(rng, n, -2, 2, 0.3);
    const Vector v = gen::integer_vector(rng, n, -2, 2, 0.3);
    const PoleProfile prof = pole_profile(a, u, v);
    if (prof.M_uv == 0) continue;
    const PlacementSpec spec = gen::random_targets(rng, prof.M_uv, 0.2);
    try {
      const PlacementResult res = solve_w(a, u, v, spec);
      ASSERT_TRUE(res.verified);
      ++ok;
      EXPECT_TRUE(check_restricted_bounds(a, u, v, res.perturbation.w).overall_pass())
          << "trial " << trial;
    } catch (const VerificationFailure& f) {
      // Reported, not silent: clusters of high multiplicity can be too
      // ill-conditioned to confirm.
      EXPECT_FALSE(f.result().verified);
      ++unverified;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::kHypothesisViolated) << "trial " << trial << ": " << e.what();
    }
  }
  EXPECT_GT(ok, 50);
  EXPECT_LE(unverified, 3);
}

TEST(PlaceMatrix, ExplicitVector) {
  const Matrix A0 = jordan(2, 0.0);
  const PlacementResult res = place_matrix(A0, unit(2, 1), targets({{1.0, 1}, {-1.0, 1}}));
  ASSERT_TRUE(res.verified);
  const auto ev = matrix_eigenvalues(A0 + materialize(res.perturbation).G);
  EXPECT_NEAR(std::abs(ev[0] + 1.0), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(ev[1] - 1.0), 0.0, 1e-9);
}

TEST(PlaceMatrix, AutoVectorRelocatesDiagonalizableMatrix) {
  const Matrix A0 = diag({1.0, 2.0, 3.0, 4.0});
  const PlacementResult res =
      place_matrix(A0, std::nullopt, targets({{-1.0, 1}, {-2.0, 1}, {5.0, 1}, {7.0, 1}}));
  ASSERT_TRUE(res.verified);
  const auto ev = matrix_eigenvalues(A0 + materialize(res.perturbation).G);
  const std::vector<double> want{-2.0, -1.0, 5.0, 7.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(ev[i] - want[i]), 0.0, 1e-8);
}

TEST(PlaceMatrix, TwoBlocksAtZeroPersist) {
  const Matrix A0 = diag({0.0, 0.0});
  const PlacementResult res = place_matrix(A0, unit(2, 0), targets({{2.0, 1}}));
  ASSERT_TRUE(res.verified);
  const auto ev = matrix_eigenvalues(A0 + materialize(res.perturbation).G);
  EXPECT_NEAR(std::abs(ev[0]), 0.0, 1e-9);
  EXPECT_NEAR(std::abs(ev[1] - 2.0), 0.0, 1e-9);
}

TEST(PlaceMatrix, InfinityIsNotATarget) {
  EXPECT_THROW(place_matrix(jordan(2, 0.0), unit(2, 1), targets({{inf(), 1}, {1.0, 1}})), Error);
}

TEST(PlaceMatrix, AgreesWithUnrestrictedPlacement) {
  gen::Rng rng(64);
  int unverified = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const Matrix A0 = gen::integer_matrix(rng, n, n, -3, 3, 0.4);
    const Pencil a = standard(A0);
    const SpectralData sd = eig_structure(a);
    const Vector v = auto_select_v(A0);
    const PoleProfile prof = pole_profile(a, Vector::Zero(n), v);
    ASSERT_EQ(prof.M_uv, sd.M) << "trial " << trial;
    const PlacementSpec spec = gen::random_targets(rng, sd.M, 0.0);
    const PlacementResult free = place(a, sd, spec);
    ASSERT_TRUE(free.verified) << "trial " << trial;
    try {
      const PlacementResult restricted = place_matrix(A0, v, spec);
      ASSERT_TRUE(restricted.verified) << "trial " << trial;
      EXPECT_TRUE(compare_spectrum(free.expected, restricted.achieved, 1e-6).empty())
          << "trial " << trial;
    } catch (const VerificationFailure& f) {
      // The automatic v can force a huge w; the closed loop is then too
      // sensitive for its clusters to be confirmed.
      EXPECT_FALSE(f.result().verified);
      ++unverified;
    }
  }
  EXPECT_LE(unverified, 2);
}
