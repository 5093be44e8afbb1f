#pragma once

#include <span>
#include <utility>
#include <vector>

#include "rankone/types.hpp"

namespace rankone {

struct LinearDivision;

/// Dense univariate polynomial with complex coefficients, ascending degree.
/// The coefficient vector is kept as given; `degree()` reports the index of
/// the last exactly-nonzero coefficient and `trimmed()` drops numerically
/// negligible leading terms.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<cdouble> coeffs);

  static Polynomial constant(cdouble c);
  static Polynomial monomial(int k, cdouble c = 1.0);
  /// s - root
  static Polynomial linear_factor(cdouble root);

  const std::vector<cdouble>& coeffs() const { return coeffs_; }
  cdouble coeff(int k) const;

  /// -1 for the zero polynomial.
  int degree() const;
  bool is_zero() const { return degree() < 0; }
  cdouble leading() const;

  cdouble operator()(cdouble s) const;

  double norm_inf() const;

  /// Drops leading coefficients with |c_k| * scale^k <= rel_tol * max_j |c_j| * scale^j.
  Polynomial trimmed(double rel_tol, double scale = 1.0) const;
  /// Truncates (or zero-pads) to exactly `count` coefficients.
  Polynomial resized(int count) const;

  Polynomial derivative() const;
  Polynomial real_part() const;
  bool is_real(double tol = 0.0) const;

  /// Synthetic division by (s - root).
  LinearDivision divide_linear(cdouble root) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(cdouble c, const Polynomial& p);

 private:
  std::vector<cdouble> coeffs_;
};

struct LinearDivision {
  Polynomial quotient;
  cdouble remainder;
};

/// Roots of a polynomial with multiplicities.
struct RootMultiset {
  std::vector<std::pair<cdouble, int>> roots;
  double cluster_tol = 1e-7;

  int total() const;
};

/// Interpolating polynomial of degree <= |nodes|-1 (Newton divided differences).
/// Throws DuplicateNodes if two nodes coincide to machine precision.
Polynomial interpolate(std::span<const cdouble> nodes, std::span<const cdouble> values);

/// count nodes radius * exp(i (phase + 2 pi j / count)).
std::vector<cdouble> circle_nodes(int count, double radius, double phase = 0.0);

/// Interpolation on circle_nodes(values.size(), radius, phase) via the inverse DFT.
Polynomial interpolate_on_circle(std::span<const cdouble> values, double radius,
                                 double phase = 0.0);

/// Coefficientwise interpolation of vector samples on
/// circle_nodes(values.size(), radius, phase): row k of the result holds the
/// coefficient vector of s^k.
Matrix interpolate_vectors_on_circle(const std::vector<Vector>& values, double radius,
                                     double phase = 0.0);

/// Raw roots (companion-matrix eigenvalues), unclustered.
std::vector<cdouble> polynomial_roots(const Polynomial& p);

/// Groups of indices into `roots`. Roots closer than cluster_tol*max(1,|z|)
/// always merge; an m-element group may additionally spread up to
/// 10*noise^(1/m)*max(1,|center|), the size of the cloud an m-fold root
/// breaks into under relative coefficient noise `noise`.
std::vector<std::vector<int>> cluster_roots(std::span<const cdouble> roots, double cluster_tol,
                                            double noise);

/// Clustered roots; throws ZeroPolynomial for p == 0.
RootMultiset roots_with_multiplicity(const Polynomial& p, double cluster_tol = 1e-7,
                                     double noise = 1e-13);

/// leading * prod (s - root)^mult
Polynomial poly_from_roots(const RootMultiset& roots, cdouble leading);

}  // namespace rankone
