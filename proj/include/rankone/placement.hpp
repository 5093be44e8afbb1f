#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rankone/errors.hpp"
#include "rankone/pencil.hpp"
#include "rankone/rank_one.hpp"
#include "rankone/spectral.hpp"

namespace rankone {

struct Target {
  ExtComplex value;
  int mult = 1;
};

/// Target multiset. budget < 0 means "whatever the operation requires";
/// otherwise it must also equal the total multiplicity.
struct PlacementSpec {
  std::vector<Target> targets;
  int budget = -1;

  int total() const;
  /// Throws InvalidInput on non-positive multiplicities or repeated values.
  void validate(double tol) const;
  /// Closed under conjugation with matching multiplicities.
  bool conjugate_symmetric(double tol) const;
};

/// An eigenvalue together with the dimension of its root subspace.
struct SpectrumEntry {
  ExtComplex lambda;
  int dim = 0;
};

struct PlacementResult {
  RankOnePencil perturbation;
  cdouble alpha = 1.0;
  cdouble beta = 0.0;
  cdouble gamma = 1.0;
  Polynomial q_gamma;
  /// Spectrum the construction is meant to produce.
  std::vector<SpectrumEntry> expected;
  /// Spectral analysis of A + P (empty if that analysis itself failed).
  SpectralData achieved;
  bool verified = false;
  /// Largest relative deviation of the determinant identity at the samples.
  double det_residual = 0.0;
  /// ||Theta(u, v) - p||_inf (or the analogous restricted residual).
  double solve_residual = 0.0;
  /// Reasons verification failed.
  std::vector<std::string> failures;
};

/// Construction finished but the spectrum check did not pass. Carries the
/// full result so callers can report both.
class VerificationFailure : public Error {
 public:
  explicit VerificationFailure(PlacementResult result);
  const PlacementResult& result() const { return result_; }

 private:
  PlacementResult result_;
};

struct PlacementOptions {
  Tolerances tol;
  bool real_mode = false;
  /// Seeds the random sample points of the determinant identity check.
  std::uint64_t seed = 0x5eed;
};

struct ThetaSolution {
  Vector u;
  Vector v;
  double residual = 0.0;
};

/// (u, v) with v^* m_A(s) (sE - A)^{-1} u = p(s). Works in Weierstrass
/// coordinates; v is fixed by the first-row pattern unless fixed_v is given.
/// Throws DegreeTooHigh, NumericallySingular.
ThetaSolution solve_theta(const Pencil& a, const SpectralData& sd, const WeierstrassForm& wf,
                          const Polynomial& p, const std::optional<Vector>& fixed_v,
                          bool real_mode, const Tolerances& tol = {});

/// Theta(u, v) = v^* m_A(s) (sE - A)^{-1} u as a polynomial of degree < count.
Polynomial theta(const Pencil& a, const Polynomial& m_A, const Vector& u, const Vector& v,
                 int count, double radius);

/// Expected spectrum of A + P: at lambda in sigma(A) the root dimension
/// drops by order(lambda) and gains m_i if lambda is a target; targets off
/// sigma(A) get m_i.
std::vector<SpectrumEntry> expected_spectrum(const SpectralData& sd,
                                             const std::vector<int>& orders,
                                             const PlacementSpec& spec, double tol);

/// Compares achieved spectral data with an expected spectrum; returns the
/// list of mismatches (empty on success).
std::vector<std::string> compare_spectrum(const std::vector<SpectrumEntry>& expected,
                                          const SpectralData& achieved, double tol);

/// Largest relative deviation of det(B)(s) den(s) = det(A)(s) num(s) over
/// seven seeded random points with modulus in [radius/2, 3 radius/2].
double determinant_identity_residual(const Pencil& a, const Pencil& b, const Polynomial& den,
                                     const Polynomial& num, double radius, std::uint64_t seed);

/// Rounding-error level of that comparison: 64 n eps (cond(sE - A) +
/// cond of the perturbed pencil) at the same seven points, worst case.
double determinant_rounding_bound(const Pencil& a, const Pencil& b, double radius,
                                  std::uint64_t seed);

/// "value:mult" list, e.g. "1:1,-1:1".
std::string format_targets(const PlacementSpec& spec);

/// prod over finite targets of (s - mu_i)^m_i
Polynomial target_polynomial(const PlacementSpec& spec);

/// Checks det(A + P)(s) den(s) = det(A)(s) num(s) at seeded points and
/// compares the spectrum of A + P with result.expected. Fills det_residual,
/// achieved, failures and verified.
void verify_placement(const Pencil& a, const Polynomial& den, const Polynomial& num,
                      double radius, const PlacementOptions& opts, PlacementResult& result);

/// Unrestricted placement: P(s) = (alpha s - beta) u v^*.
PlacementResult place(const Pencil& a, const PlacementSpec& spec,
                      const PlacementOptions& opts = {});
PlacementResult place(const Pencil& a, const SpectralData& sd, const PlacementSpec& spec,
                      const PlacementOptions& opts = {});

/// Placement when every eigenvalue of A has a single chain; also checks that
/// each target ends up with a single chain. Throws PreconditionViolated.
PlacementResult place_single_chain(const Pencil& a, const PlacementSpec& spec,
                                   const PlacementOptions& opts = {});

/// Pencil in Weierstrass form with one Jordan block per entry of `before`.
Pencil single_chain_pencil(const std::vector<Target>& before);

struct InverseResult {
  Pencil pencil;
  PlacementResult placement;
};

/// A with spectrum `before` (one chain per eigenvalue) and P with
/// sigma(A + P) = `after`. Throws TotalMismatch.
InverseResult inverse_construct(const std::vector<Target>& before,
                                const std::vector<Target>& after,
                                const PlacementOptions& opts = {});

}  // namespace rankone
