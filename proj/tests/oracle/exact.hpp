#pragma once

// Exact rational-arithmetic reference for integer pencils of small size.
// Nothing here shares code with the library: eigenvalues are never
// approximated. Each group of eigenvalues is represented by a squarefree
// rational polynomial g, and ranks are computed over Q[x]/(g). When a pivot
// turns out to be a zero divisor modulo g, the group is split along the
// resulting factor and the computation restarts on both pieces.

#include <complex>
#include <vector>

#include <gmpxx.h>

#include "rankone/types.hpp"

namespace oracle {

/// Ascending coefficients, no trailing zeros (the zero polynomial is empty).
using QPoly = std::vector<mpq_class>;
using QMatrix = std::vector<std::vector<mpq_class>>;

QPoly trim(QPoly p);
int degree(const QPoly& p);
QPoly add(const QPoly& a, const QPoly& b);
QPoly sub(const QPoly& a, const QPoly& b);
QPoly mul(const QPoly& a, const QPoly& b);
/// a = q b + r with deg r < deg b.
void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly monic(const QPoly& p);
QPoly gcd(const QPoly& a, const QPoly& b);
QPoly derivative(const QPoly& p);
std::vector<std::complex<double>> to_complex(const QPoly& p);

/// Throws std::invalid_argument unless every entry is a real integer.
QMatrix to_rational(const rankone::Matrix& m);
std::vector<mpq_class> to_rational(const rankone::Vector& v);

/// det(sE - A) by permutation expansion.
QPoly det_poly(const QMatrix& E, const QMatrix& A);

/// Yun's algorithm: p = c * prod g_i^i with squarefree, pairwise coprime g_i.
std::vector<std::pair<QPoly, int>> squarefree_decomposition(const QPoly& p);

/// A set of conjugate eigenvalues: the roots of g, all with the same
/// algebraic multiplicity and the same chain structure.
struct Family {
  QPoly g;
  int alg_mult = 0;
  std::vector<int> tower;  // nu_1 .. nu_{m_1}
  std::vector<int> segre;
  std::vector<std::complex<double>> roots;  // numerical roots of g, for matching
};

struct Structure {
  std::vector<Family> finite;
  int inf_mult = 0;
  std::vector<int> inf_tower;
  std::vector<int> inf_segre;
};

/// Throws std::invalid_argument for non-integer data or a singular pencil.
Structure analyze(const rankone::Matrix& E, const rankone::Matrix& A);

/// Pole order of (sE - A)^{-1}(s u + v) at every root of g.
struct PoleFamily {
  QPoly g;
  int order = 0;
  std::vector<std::complex<double>> roots;
};

struct PoleOrders {
  std::vector<PoleFamily> finite;
  int inf_order = 0;  // through (-sA + E)^{-1}(s v + u) at 0
};
PoleOrders pole_orders(const rankone::Matrix& E, const rankone::Matrix& A,
                       const rankone::Vector& u, const rankone::Vector& v);

std::vector<int> segre_from_tower(const std::vector<int>& tower);

}  // namespace oracle
