#pragma once

#include <optional>

#include "rankone/pencil.hpp"
#include "rankone/placement.hpp"
#include "rankone/restricted.hpp"

namespace rankone {

/// Single-input descriptor system d/dt E x = A x + b u.
struct DaeSystem {
  Matrix E;
  Matrix A;
  Vector b;
  bool is_real = false;

  /// Throws InvalidInput on inconsistent sizes, NotRegular if sE - A is not.
  DaeSystem(Matrix E, Matrix A, Vector b, const Tolerances& tol = {});

  int n() const { return static_cast<int>(E.rows()); }
  Pencil pencil() const { return Pencil(E, A); }
};

struct HautusResult {
  bool controllable = true;
  /// A finite eigenvalue where rk [lambda E - A, b] < n.
  std::optional<ExtComplex> witness;
  int rank_at_witness = 0;
};

/// rk [lambda E - A, b] = n at every finite eigenvalue.
HautusResult hautus_controllable(const DaeSystem& sys, const Tolerances& tol = {});

/// The same property through the pencil: one chain and
/// m_{0,-b}(lambda) = m_1(lambda) = dim L_lambda at every finite eigenvalue.
bool hautus_by_pole_orders(const DaeSystem& sys, const Tolerances& tol = {});

struct FeedbackResult {
  /// Closed loop sE - (A + b f^*); real systems use f^T.
  Vector f;
  PlacementResult placement;
};

/// Feedback placement through solve_w with u = 0, v = -b. Throws
/// InfinityForbidden when E is invertible and infinity is a target.
FeedbackResult place_feedback(const DaeSystem& sys, const PlacementSpec& spec,
                              const PlacementOptions& opts = {});

}  // namespace rankone
