#pragma once

#include <optional>
#include <vector>

#include "rankone/pencil.hpp"
#include "rankone/poly.hpp"
#include "rankone/types.hpp"

namespace rankone {

/// Structure of a single eigenvalue.
struct EigStructure {
  ExtComplex lambda;
  /// Chain lengths m_1 >= m_2 >= ... (one per independent chain).
  std::vector<int> segre;
  int root_dim = 0;
  /// nu_k = dim L^k for k = 1..m_1; the last entry equals root_dim.
  std::vector<int> nullity_tower;

  int geometric() const { return static_cast<int>(segre.size()); }
  int m1() const { return segre.empty() ? 0 : segre.front(); }
};

struct SpectralData {
  /// Finite eigenvalues sorted by (real, imag), then infinity if present.
  std::vector<EigStructure> eigs;
  /// prod over finite eigenvalues of (s - lambda)^m_1(lambda).
  Polynomial m_A;
  /// sum over all eigenvalues (including infinity) of m_1(lambda).
  int M = 0;
  int n = 0;

  /// Entry whose eigenvalue is within tol * max(1, |lambda|) of z.
  const EigStructure* find(const ExtComplex& z, double tol) const;
  const EigStructure* infinity() const;
  int m1_infinity() const;
  /// Largest modulus over finite eigenvalues (0 if none).
  double max_finite_modulus() const;
};

/// Jordan block layout inside a Weierstrass form.
struct WeierstrassBlock {
  ExtComplex lambda;
  int size = 0;    // chain length
  int offset = 0;  // first column in T
  /// Real form only: the block is the real 2*size x 2*size block of the
  /// conjugate pair lambda, conj(lambda) (Im lambda > 0).
  bool conjugate_pair = false;
};

struct WeierstrassForm {
  Matrix S;
  Matrix T;
  Matrix J;  // r x r
  Matrix N;  // (n-r) x (n-r), nilpotent
  int r = 0;
  bool real_form = false;
  std::vector<WeierstrassBlock> blocks;
  /// 2-norm condition number of W = [E T_fin | A T_inf].
  double cond = 1.0;

  /// diag(I_r, N)
  Matrix E_w() const;
  /// diag(J, I_{n-r})
  Matrix A_w() const;
};

/// [nu_1, ..., nu_kmax] at lambda (infinity through the dual pencil at 0).
/// Throws NotRegular.
std::vector<int> nullity_tower(const Pencil& p, const ExtComplex& lambda, int k_max,
                               double tol_rank = 1e-9);

/// Tower computed until it stabilizes (no regularity check); the result has
/// m_1(lambda) entries, or is empty if lambda is not an eigenvalue.
std::vector<int> stable_tower(const Pencil& p, const ExtComplex& lambda, double tol_rank);

/// Segre characteristic from a tower; throws StructureInconsistent unless
/// the increments are non-increasing.
std::vector<int> segre_from_tower(const std::vector<int>& tower);

SpectralData eig_structure(const Pencil& p, const Tolerances& tol = {});

/// Independent Jordan chains at lambda, longest first. Throws NotEigenvalue.
std::vector<std::vector<Vector>> jordan_chains(const Pencil& p, const ExtComplex& lambda,
                                               const Tolerances& tol = {});

WeierstrassForm weierstrass(const Pencil& p, bool real_form = false, const Tolerances& tol = {});
WeierstrassForm weierstrass(const Pencil& p, const SpectralData& sd, bool real_form,
                            const Tolerances& tol = {});

/// ||S (s0 E - A) T - (s0 E_w - A_w)||_F
double weierstrass_residual(const Pencil& p, const WeierstrassForm& wf, cdouble s0);

}  // namespace rankone
