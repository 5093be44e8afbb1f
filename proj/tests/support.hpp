#pragma once

#include <algorithm>
#include <initializer_list>
#include <vector>

#include "rankone/pencil.hpp"
#include "rankone/placement.hpp"
#include "rankone/spectral.hpp"

namespace testing_support {

using rankone::cdouble;
using rankone::ExtComplex;
using rankone::Matrix;
using rankone::Vector;

inline Matrix mat(std::initializer_list<std::initializer_list<cdouble>> rows) {
  Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.begin()->size()));
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

inline Vector vec(std::initializer_list<cdouble> xs) {
  Vector v(static_cast<int>(xs.size()));
  int i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

inline Vector unit(int n, int k) {
  Vector v = Vector::Zero(n);
  v(k) = 1.0;
  return v;
}

inline Matrix eye(int n) { return Matrix::Identity(n, n); }

/// Upper Jordan block J_k(lambda).
inline Matrix jordan(int k, cdouble lambda) {
  Matrix m = lambda * Matrix::Identity(k, k);
  for (int i = 0; i + 1 < k; ++i) m(i, i + 1) = 1.0;
  return m;
}

inline Matrix block_diag(std::initializer_list<Matrix> blocks) {
  int n = 0;
  for (const auto& b : blocks) n += static_cast<int>(b.rows());
  Matrix m = Matrix::Zero(n, n);
  int off = 0;
  for (const auto& b : blocks) {
    m.block(off, off, b.rows(), b.cols()) = b;
    off += static_cast<int>(b.rows());
  }
  return m;
}

inline Matrix diag(std::initializer_list<cdouble> xs) { return vec(xs).asDiagonal(); }

/// sI - A0
inline rankone::Pencil standard(const Matrix& A0) {
  return rankone::Pencil(eye(static_cast<int>(A0.rows())), A0);
}

inline rankone::PlacementSpec targets(std::initializer_list<rankone::Target> ts) {
  rankone::PlacementSpec spec;
  spec.targets = ts;
  return spec;
}

inline ExtComplex inf() { return ExtComplex::infinity(); }

inline std::vector<int> segre_at(const rankone::SpectralData& sd, const ExtComplex& z) {
  const auto* e = sd.find(z, 1e-6);
  return e ? e->segre : std::vector<int>{};
}

inline int dim_at(const rankone::SpectralData& sd, const ExtComplex& z) {
  const auto* e = sd.find(z, 1e-6);
  return e ? e->root_dim : 0;
}

}  // namespace testing_support
