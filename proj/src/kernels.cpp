#include "rankone/kernels.hpp"

#include <omp.h>

namespace rankone::kernels {

namespace {

// Below this many nodes the thread start-up cost dominates.
constexpr int kMinParallelNodes = 4;

cdouble det_one(const Matrix& E, const Matrix& A, cdouble s) {
  if (E.rows() == 0) return 1.0;
  const Matrix m = s * E - A;
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

Vector solve_one(const Matrix& E, const Matrix& A, cdouble s, const Vector& u, const Vector& v) {
  const Matrix m = s * E - A;
  return Eigen::PartialPivLU<Matrix>(m).solve(s * u + v);
}

Vector adjoint_solve_one(const Matrix& E, const Matrix& A, cdouble s, const Vector& w) {
  const Matrix m = (s * E - A).adjoint();
  return Eigen::PartialPivLU<Matrix>(m).solve(w);
}

cdouble log_det_derivative_one(const Matrix& E, const Matrix& A, cdouble s) {
  const Matrix m = s * E - A;
  return Eigen::PartialPivLU<Matrix>(m).solve(E).trace();
}

}  // namespace

std::vector<cdouble> det_at_nodes(const Matrix& E, const Matrix& A,
                                  std::span<const cdouble> nodes) {
  const int count = static_cast<int>(nodes.size());
  std::vector<cdouble> out(nodes.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallelNodes)
  for (int j = 0; j < count; ++j) out[j] = det_one(E, A, nodes[j]);
  return out;
}

std::vector<Vector> solve_at_nodes(const Matrix& E, const Matrix& A,
                                   std::span<const cdouble> nodes, const Vector& u,
                                   const Vector& v) {
  const int count = static_cast<int>(nodes.size());
  std::vector<Vector> out(nodes.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallelNodes)
  for (int j = 0; j < count; ++j) out[j] = solve_one(E, A, nodes[j], u, v);
  return out;
}

std::vector<Vector> adjoint_solve_at_nodes(const Matrix& E, const Matrix& A,
                                           std::span<const cdouble> nodes, const Vector& w) {
  const int count = static_cast<int>(nodes.size());
  std::vector<Vector> out(nodes.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallelNodes)
  for (int j = 0; j < count; ++j) out[j] = adjoint_solve_one(E, A, nodes[j], w);
  return out;
}

std::vector<cdouble> log_det_derivative_at_nodes(const Matrix& E, const Matrix& A,
                                                 std::span<const cdouble> nodes) {
  const int count = static_cast<int>(nodes.size());
  std::vector<cdouble> out(nodes.size());
#pragma omp parallel for schedule(static) if (count >= kMinParallelNodes)
  for (int j = 0; j < count; ++j) out[j] = log_det_derivative_one(E, A, nodes[j]);
  return out;
}

namespace serial {

std::vector<cdouble> det_at_nodes(const Matrix& E, const Matrix& A,
                                  std::span<const cdouble> nodes) {
  std::vector<cdouble> out;
  out.reserve(nodes.size());
  for (cdouble s : nodes) out.push_back(det_one(E, A, s));
  return out;
}

std::vector<Vector> solve_at_nodes(const Matrix& E, const Matrix& A,
                                   std::span<const cdouble> nodes, const Vector& u,
                                   const Vector& v) {
  std::vector<Vector> out;
  out.reserve(nodes.size());
  for (cdouble s : nodes) out.push_back(solve_one(E, A, s, u, v));
  return out;
}

std::vector<Vector> adjoint_solve_at_nodes(const Matrix& E, const Matrix& A,
                                           std::span<const cdouble> nodes, const Vector& w) {
  std::vector<Vector> out;
  out.reserve(nodes.size());
  for (cdouble s : nodes) out.push_back(adjoint_solve_one(E, A, s, w));
  return out;
}

std::vector<cdouble> log_det_derivative_at_nodes(const Matrix& E, const Matrix& A,
                                                 std::span<const cdouble> nodes) {
  std::vector<cdouble> out;
  out.reserve(nodes.size());
  for (cdouble s : nodes) out.push_back(log_det_derivative_one(E, A, s));
  return out;
}

}  // namespace serial

int max_threads() { return omp_get_max_threads(); }

}  // namespace rankone::kernels
