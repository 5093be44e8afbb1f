#pragma once

#include "rankone/poly.hpp"
#include "rankone/types.hpp"

namespace rankone {

/// The matrix pencil sE - A.
class Pencil {
 public:
  Pencil() = default;
  /// Throws InvalidInput unless E and A are square of equal size.
  Pencil(Matrix E, Matrix A);

  const Matrix& E() const { return E_; }
  const Matrix& A() const { return A_; }
  int n() const { return static_cast<int>(E_.rows()); }
  /// True iff every entry of E and A has zero imaginary part.
  bool is_real() const { return is_real_; }

  /// 1 + max(||E||_inf, ||A||_inf); the radius of the interpolation circle.
  double scale() const;

 private:
  Matrix E_;
  Matrix A_;
  bool is_real_ = true;
};

struct CharPoly {
  Polynomial det_poly;  // det(sE - A)
  int finite_degree = -1;
};

/// s0 E - A
Matrix evaluate(const Pencil& p, cdouble s0);

/// det(sE - A) from n+1 determinant evaluations on a circle of radius
/// p.scale(), interpolated and trimmed of negligible leading terms.
CharPoly char_poly(const Pencil& p);

/// Largest sigma_min / sigma_max of sE - A over sample points on the unit
/// circle and on the circle of radius scale().
double regularity_margin(const Pencil& p);

/// regularity_margin(p) > tol.
bool is_regular(const Pencil& p, double tol = 1e-10);

/// The dual pencil -sA + E, i.e. E' = -A, A' = -E. Exchanges the structure
/// at 0 and at infinity; applying it twice returns the original pencil.
Pencil dualize(const Pencil& p);

/// Pencil (E + F, A + G) for the sum (sE - A) + (sF - G).
Pencil add(const Pencil& a, const Matrix& F, const Matrix& G);

}  // namespace rankone
