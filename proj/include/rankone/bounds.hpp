#pragma once

#include <string>
#include <vector>

#include "rankone/pencil.hpp"
#include "rankone/rank_one.hpp"
#include "rankone/spectral.hpp"

namespace rankone {

/// One checked inequality lower <= value <= upper. Per-eigenvalue records
/// carry lambda (and k for layer and truncation checks); global records have
/// has_lambda = false.
struct BoundRecord {
  std::string check;
  bool has_lambda = true;
  ExtComplex lambda;
  int k = 0;
  int before = 0;
  int after = 0;
  int value = 0;
  int lower = 0;
  int upper = 0;
  bool satisfied = true;
  /// min(value - lower, upper - value); negative when violated.
  int slack = 0;
};

struct BoundsReport {
  std::vector<BoundRecord> records;

  bool overall_pass() const;
  void append(const BoundsReport& other);
};

/// Check names used in BoundRecord::check.
namespace checks {
inline constexpr const char* kLayer = "layer";            // |d dim L^{k+1}/L^k| <= 1
inline constexpr const char* kTruncation = "truncation";  // |d dim L^k| <= k
inline constexpr const char* kPersistence = "persistence";
inline constexpr const char* kNewGeometric = "new_geometric";
inline constexpr const char* kRootDim = "root_dim";
inline constexpr const char* kNewRootDim = "new_root_dim";
inline constexpr const char* kSumOld = "sum_old";
inline constexpr const char* kSumNew = "sum_new";
}  // namespace checks

/// Layer and truncation inequalities at every lambda in sigma(A) u sigma(A+P)
/// for k = 1 .. min(n, longest chain + 1). Throws NotRegular.
BoundsReport check_layer_bounds(const Pencil& a, const RankOnePencil& p,
                                const Tolerances& tol = {});
BoundsReport check_layer_bounds(const SpectralData& before, const SpectralData& after,
                                double match_tol);

/// Eigenvalues with two or more chains survive; new eigenvalues have a
/// single chain. Throws NotRegular.
BoundsReport check_persistence(const Pencil& a, const RankOnePencil& p,
                               const Tolerances& tol = {});
BoundsReport check_persistence(const SpectralData& before, const SpectralData& after,
                               double match_tol);

/// Root-subspace bounds in terms of m_1 and M(A), per eigenvalue and summed.
/// Throws NotRegular.
BoundsReport check_root_dim_bounds(const Pencil& a, const RankOnePencil& p,
                                   const Tolerances& tol = {});
BoundsReport check_root_dim_bounds(const SpectralData& before, const SpectralData& after,
                                   double match_tol);

/// All three groups.
BoundsReport check_all_bounds(const Pencil& a, const RankOnePencil& p, const Tolerances& tol = {});
BoundsReport check_all_bounds(const SpectralData& before, const SpectralData& after,
                              double match_tol);

}  // namespace rankone
