#include "rankone/feedback.hpp"

#include <algorithm>

#include "rankone/linalg.hpp"

namespace rankone {

DaeSystem::DaeSystem(Matrix E_in, Matrix A_in, Vector b_in, const Tolerances& tol)
    : E(std::move(E_in)), A(std::move(A_in)), b(std::move(b_in)) {
  const auto n = E.rows();
  if (E.cols() != n || A.rows() != n || A.cols() != n || b.size() != n) {
    throw Error(ErrorCode::kInvalidInput, "E, A must be n x n and b of length n");
  }
  if (!is_regular(Pencil(E, A), tol.regular)) {
    throw Error(ErrorCode::kNotRegular, "sE - A is not regular");
  }
  is_real = linalg::is_real(E) && linalg::is_real(A) && linalg::is_real(b);
}

HautusResult hautus_controllable(const DaeSystem& sys, const Tolerances& tol) {
  const int n = sys.n();
  HautusResult out;
  if (n == 0) return out;
  const SpectralData sd = eig_structure(sys.pencil(), tol);
  const double reference = std::max(linalg::singular_values(sys.E)(0),
                                    linalg::singular_values(sys.A)(0));
  // Rescaling b does not change the rank but keeps it on the pencil's scale.
  const double bnorm = sys.b.norm();
  const Vector b = bnorm > 0.0 ? Vector(sys.b * (std::max(reference, 1.0) / bnorm)) : sys.b;
  for (const auto& e : sd.eigs) {
    if (e.lambda.is_infinite()) continue;
    Matrix compound(n, n + 1);
    compound << e.lambda.value() * sys.E - sys.A, b;
    const int rank = n + 1 - linalg::structural_nullity(compound, tol.rank, reference);
    if (rank < n) {
      out.controllable = false;
      out.witness = e.lambda;
      out.rank_at_witness = rank;
      return out;
    }
  }
  return out;
}

bool hautus_by_pole_orders(const DaeSystem& sys, const Tolerances& tol) {
  const Pencil a = sys.pencil();
  const SpectralData sd = eig_structure(a, tol);
  const PoleProfile profile = pole_profile(a, sd, Vector::Zero(sys.n()), -sys.b, tol);
  for (std::size_t i = 0; i < sd.eigs.size(); ++i) {
    const auto& e = sd.eigs[i];
    if (e.lambda.is_infinite()) continue;
    if (e.geometric() != 1 || profile.entries[i].order != e.m1() || e.m1() != e.root_dim) {
      return false;
    }
  }
  return true;
}

FeedbackResult place_feedback(const DaeSystem& sys, const PlacementSpec& spec,
                              const PlacementOptions& opts) {
  const Pencil a = sys.pencil();
  const SpectralData sd = eig_structure(a, opts.tol);
  if (sd.infinity() == nullptr) {
    for (const auto& t : spec.targets) {
      if (t.value.is_infinite()) {
        throw Error(ErrorCode::kInfinityForbidden,
                    "E is invertible, so infinity cannot be placed by feedback");
      }
    }
  }
  FeedbackResult out;
  out.placement = solve_w(a, Vector::Zero(sys.n()), -sys.b, spec, opts);
  out.f = out.placement.perturbation.w;
  return out;
}

}  // namespace rankone
