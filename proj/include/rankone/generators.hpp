#pragma once

// Seeded random instances for property tests, the acceptance suite and the
// benchmark.

#include <random>

#include "rankone/pencil.hpp"
#include "rankone/placement.hpp"
#include "rankone/rank_one.hpp"

namespace rankone::gen {

using Rng = std::mt19937_64;

/// Integer matrix with entries uniform in [lo, hi]; each entry is forced to
/// zero with probability zero_prob (sparser data gives more repeated and
/// infinite eigenvalues).
Matrix integer_matrix(Rng& rng, int rows, int cols, int lo, int hi, double zero_prob = 0.0);
Vector integer_vector(Rng& rng, int n, int lo, int hi, double zero_prob = 0.0);

/// Regular integer pencil with entries in [lo, hi] (rejection sampling).
Pencil integer_pencil(Rng& rng, int n, int lo = -3, int hi = 3, double zero_prob = 0.0);

/// Rank-one pencil of a random form with integer data in [lo, hi]; never zero.
RankOnePencil integer_rank_one(Rng& rng, int n, int lo = -3, int hi = 3);

/// Random multiset of total `budget`: Gaussian integers with real and
/// imaginary parts in [-range, range] (real only if real_values), infinity
/// included with probability inf_prob.
PlacementSpec random_targets(Rng& rng, int budget, double inf_prob, int range = 4,
                             bool real_values = false);

/// Conjugate-symmetric multiset of finite values with total `budget`.
PlacementSpec symmetric_targets(Rng& rng, int budget, int range = 4);

/// Random multiset of total n with single-chain structure (for the inverse
/// problem), infinity included with probability inf_prob.
std::vector<Target> random_multiset(Rng& rng, int n, double inf_prob, int range = 4);

}  // namespace rankone::gen
