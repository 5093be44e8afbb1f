#pragma once

#include <complex>
#include <string>

#include <Eigen/Dense>

namespace rankone {

using cdouble = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// A point of the extended complex plane C ∪ {∞}.
class ExtComplex {
 public:
  ExtComplex() = default;
  ExtComplex(cdouble z) : value_(z) {}  // NOLINT(google-explicit-constructor)
  ExtComplex(double x) : value_(x, 0.0) {}  // NOLINT(google-explicit-constructor)

  static ExtComplex infinity() {
    ExtComplex z;
    z.infinite_ = true;
    return z;
  }

  bool is_infinite() const { return infinite_; }
  bool is_finite() const { return !infinite_; }

  /// Finite value; throws InvalidInput when called on ∞.
  cdouble value() const;

  ExtComplex conj() const { return infinite_ ? *this : ExtComplex(std::conj(value_)); }

  friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ == b.infinite_;
    return a.value_ == b.value_;
  }

 private:
  cdouble value_{};
  bool infinite_ = false;
};

/// Both infinite, or both finite with |a-b| <= tol * max(1, |a|, |b|).
bool near(const ExtComplex& a, const ExtComplex& b, double tol);

/// "inf", "2", "-1.5+2i", "3i".
std::string to_string(const ExtComplex& z);
std::string to_string(cdouble z);

/// Parses the literals produced by to_string; "inf"/"∞" denote infinity.
ExtComplex parse_ext_complex(const std::string& text);

/// Tolerances shared by every rank and multiplicity decision.
struct Tolerances {
  /// Singular values below rank * sigma_max * dim count as zero.
  double rank = 1e-9;
  /// Finest clustering radius for computed eigenvalues, relative to
  /// max(1, |root|); closer roots always form one group.
  double cluster = 1e-7;
  /// Relative distance under which two eigenvalues are treated as equal when
  /// comparing spectra (targets against computed eigenvalues).
  double match = 1e-6;
  /// sE - A counts as regular when sigma_min / sigma_max exceeds this at
  /// some sample point.
  double regular = 1e-10;
};

}  // namespace rankone
