#pragma once

// Small dense helpers shared by the spectral and perturbation modules. All
// rank decisions go through the same relative threshold:
//   sigma_i <= tol * sigma_max * max(rows, cols)  =>  sigma_i counts as zero.
// Real-valued inputs (all imaginary parts exactly zero) are decomposed in real
// arithmetic so that bases and factors come out real.

#include <Eigen/Dense>

#include "rankone/types.hpp"

namespace rankone::linalg {

bool is_real(const Matrix& m);
bool is_real(const Vector& v);

double max_imag(const Matrix& m);

Eigen::VectorXd singular_values(const Matrix& m);

int numerical_rank(const Matrix& m, double tol);
int nullity(const Matrix& m, double tol);

/// Orthonormal basis of the numerical null space (cols x nullity).
Matrix null_space(const Matrix& m, double tol);

/// Variants for the nullity towers of badly scaled pencils: a singular value
/// under the threshold still counts toward the rank when it is separated by
/// a wide gap from a tail that is pure round-off. The threshold is relative
/// to max(sigma_max, reference), so a matrix that is small only because it
/// is nearly zero is not mistaken for a full-rank one.
int structural_nullity(const Matrix& m, double tol, double reference);
Matrix structural_null_space(const Matrix& m, double tol, double reference);

/// Right singular vectors (columns ordered by decreasing singular value).
Matrix right_singular_vectors(const Matrix& m);

/// Orthonormal basis of the numerical column space.
Matrix range_basis(const Matrix& m, double tol);

/// 2-norm condition number; +inf for singular input.
double cond2(const Matrix& m);

/// Max absolute row sum.
double norm_inf(const Matrix& m);

cdouble determinant(const Matrix& m);

/// Dominant singular triplet of m, returned as m ~= left * right^*.
struct RankOneFactor {
  Vector left;   // sigma_1 * u_1
  Vector right;  // v_1
  double sigma = 0.0;
  double second_sigma = 0.0;
};
RankOneFactor dominant_factor(const Matrix& m);

/// Sine of the angle between two nonzero vectors (1 if either is zero).
double sin_angle(const Vector& a, const Vector& b);

/// Drop imaginary parts (used once a result is known to be real).
Matrix real_part(const Matrix& m);
Vector real_part(const Vector& v);

}  // namespace rankone::linalg
