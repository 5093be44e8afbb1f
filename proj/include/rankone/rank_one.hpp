#pragma once

#include "rankone/pencil.hpp"
#include "rankone/spectral.hpp"
#include "rankone/types.hpp"

namespace rankone {

enum class RankOneForm { kLeftVector, kRightVector, kDegenerate };

std::string_view to_string(RankOneForm form);
RankOneForm parse_rank_one_form(std::string_view text);

/// LeftVector:  (s u + v) w^*
/// RightVector: w (s u^* + v^*)
/// Degenerate:  (alpha s - beta) u w^*
struct RankOnePencil {
  RankOneForm form = RankOneForm::kLeftVector;
  Vector u;
  Vector v;
  Vector w;
  cdouble alpha = 1.0;
  cdouble beta = 0.0;

  bool is_real() const;
  int n() const { return static_cast<int>(w.size()); }

  static RankOnePencil left(Vector u, Vector v, Vector w);
  static RankOnePencil right(Vector u, Vector v, Vector w);
  static RankOnePencil degenerate(cdouble alpha, cdouble beta, Vector u, Vector w);
};

/// (F, G) with sF - G equal to the structured form.
struct RankOneMatrices {
  Matrix F;
  Matrix G;
};

RankOneMatrices materialize(const RankOnePencil& p);

/// -P(s) in the same form.
RankOnePencil negated(const RankOnePencil& p);

/// sE - A + P(s)
Pencil perturb(const Pencil& a, const RankOnePencil& p);

/// Structured factorization of a pencil sF - G of rank one. Throws NotRankOne.
RankOnePencil decompose(const Matrix& F, const Matrix& G, double tol_rank = 1e-9);

enum class RegularityVerdict { kRegularGuaranteed, kSharedEigenvalue };

struct RegularityCheck {
  RegularityVerdict verdict = RegularityVerdict::kRegularGuaranteed;
  /// beta/alpha (infinity when alpha = 0).
  ExtComplex point;
};

/// beta/alpha not in sigma(A) guarantees A + P regular; otherwise beta/alpha
/// is an eigenvalue of A + P. Throws NotDegenerate.
RegularityCheck degenerate_regularity_check(const Pencil& a, const RankOnePencil& p,
                                            const Tolerances& tol = {});
RegularityCheck degenerate_regularity_check(const SpectralData& sd, const RankOnePencil& p,
                                            const Tolerances& tol = {});

}  // namespace rankone
