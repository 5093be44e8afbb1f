#pragma once

// Data-parallel inner loops: one independent dense factorization per sample
// node. The OpenMP versions are the ones the library calls; the serial
// versions are kept as the reference implementation for tests and for the
// benchmark. Both produce bit-identical results because every node is
// processed by exactly the same sequence of operations.

#include <span>
#include <vector>

#include "rankone/types.hpp"

namespace rankone::kernels {

/// det(s_j E - A) for every node s_j.
std::vector<cdouble> det_at_nodes(const Matrix& E, const Matrix& A,
                                  std::span<const cdouble> nodes);

/// x_j = (s_j E - A)^{-1} (s_j u + v).
std::vector<Vector> solve_at_nodes(const Matrix& E, const Matrix& A,
                                   std::span<const cdouble> nodes, const Vector& u,
                                   const Vector& v);

/// y_j = (s_j E - A)^{-*} w, so that y_j^* = w^* (s_j E - A)^{-1}.
std::vector<Vector> adjoint_solve_at_nodes(const Matrix& E, const Matrix& A,
                                           std::span<const cdouble> nodes, const Vector& w);

/// tr((s_j E - A)^{-1} E) = d/ds log det(s E - A) at every node.
std::vector<cdouble> log_det_derivative_at_nodes(const Matrix& E, const Matrix& A,
                                                 std::span<const cdouble> nodes);

namespace serial {

std::vector<cdouble> det_at_nodes(const Matrix& E, const Matrix& A,
                                  std::span<const cdouble> nodes);
std::vector<Vector> solve_at_nodes(const Matrix& E, const Matrix& A,
                                   std::span<const cdouble> nodes, const Vector& u,
                                   const Vector& v);
std::vector<Vector> adjoint_solve_at_nodes(const Matrix& E, const Matrix& A,
                                           std::span<const cdouble> nodes, const Vector& w);
std::vector<cdouble> log_det_derivative_at_nodes(const Matrix& E, const Matrix& A,
                                                 std::span<const cdouble> nodes);

}  // namespace serial

/// Runs fn(i) for i in [0, count) across OpenMP threads. fn must only write
/// to per-index state; results therefore do not depend on scheduling.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < count; ++i) fn(i);
}

/// Number of threads OpenMP would use for a parallel region.
int max_threads();

}  // namespace rankone::kernels
