#pragma once

#include <optional>
#include <vector>

#include "rankone/bounds.hpp"
#include "rankone/pencil.hpp"
#include "rankone/placement.hpp"
#include "rankone/spectral.hpp"

namespace rankone {

/// Pole orders of s -> (sE - A)^{-1}(s u + v) at the eigenvalues of A
/// (at infinity through (-sA + E)^{-1}(s v + u) at 0).
struct PoleProfile {
  struct Entry {
    ExtComplex lambda;
    int order = 0;
    int m1 = 0;
  };
  /// Same order as SpectralData::eigs.
  std::vector<Entry> entries;
  int M_uv = 0;
  /// prod over finite lambda of (s - lambda)^order
  Polynomial m_tilde = Polynomial::constant(1.0);

  const Entry* find(const ExtComplex& z, double tol) const;
};

/// Throws NotRegular.
PoleProfile pole_profile(const Pencil& a, const Vector& u, const Vector& v,
                         const Tolerances& tol = {});
PoleProfile pole_profile(const Pencil& a, const SpectralData& sd, const Vector& u,
                         const Vector& v, const Tolerances& tol = {});

/// Eigenvalues of A that stay in the spectrum of A + (s u + v) w^* for every
/// w: more than one chain, or a pole order below m_1.
std::vector<ExtComplex> spectrum_floor(const Pencil& a, const Vector& u, const Vector& v,
                                       const Tolerances& tol = {});

/// Restricted root-subspace bounds for P = (s u + v) w^*, per eigenvalue of
/// A, per new eigenvalue, and summed. Uses the check names root_dim,
/// new_root_dim, sum_old, sum_new. Throws NotRegular.
BoundsReport check_restricted_bounds(const Pencil& a, const Vector& u, const Vector& v,
                                     const Vector& w, const Tolerances& tol = {});
BoundsReport check_restricted_bounds(const SpectralData& before, const PoleProfile& profile,
                                     const SpectralData& after, double match_tol);

/// w with sigma(A + (s u + v) w^*) = targets plus the floor set. The budget
/// is M(A, u, v). Throws BudgetMismatch, HypothesisViolated,
/// NumericallySingular, VerificationFailure.
PlacementResult solve_w(const Pencil& a, const Vector& u, const Vector& v,
                        const PlacementSpec& spec, const PlacementOptions& opts = {});

/// v with m_{0,v}(lambda) = m_1(lambda) at every eigenvalue of sI - A0.
Vector auto_select_v(const Matrix& A0, const PlacementOptions& opts = {});

/// sigma(A0 + v w^*) placement; v defaults to auto_select_v. Infinity may
/// not be a target. The returned perturbation is the pencil term -v w^*.
PlacementResult place_matrix(const Matrix& A0, const std::optional<Vector>& v,
                             const PlacementSpec& spec, const PlacementOptions& opts = {});

}  // namespace rankone
