#include "rankone/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/SVD>

namespace rankone::linalg {

namespace {

struct Svd {
  Eigen::VectorXd sigma;
  Matrix u;
  Matrix v;
};

// Full SVD; real inputs are decomposed in real arithmetic.
Svd full_svd(const Matrix& m, bool want_u, bool want_v) {
  unsigned int flags = 0;
  if (want_u) flags |= Eigen::ComputeFullU;
  if (want_v) flags |= Eigen::ComputeFullV;
  Svd out;
  if (is_real(m)) {
    const Eigen::MatrixXd re = m.real();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(re, flags);
    out.sigma = svd.singularValues();
    if (want_u) out.u = svd.matrixU().cast<cdouble>();
    if (want_v) out.v = svd.matrixV().cast<cdouble>();
  } else {
    Eigen::BDCSVD<Matrix> svd(m, flags);
    out.sigma = svd.singularValues();
    if (want_u) out.u = svd.matrixU();
    if (want_v) out.v = svd.matrixV();
  }
  return out;
}

int rank_from_sigma(const Eigen::VectorXd& sigma, Eigen::Index rows, Eigen::Index cols,
                    double tol) {
  if (sigma.size() == 0) return 0;
  const double smax = sigma(0);
  if (smax == 0.0) return 0;
  const double threshold = tol * smax * static_cast<double>(std::max(rows, cols));
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > threshold) ++rank;
  }
  return rank;
}

// Below the threshold, a singular value that clears the round-off floor by
// kGapFloor and sits kGapRatio above everything after it is kept in the rank.
constexpr double kGapFloor = 1e3;
constexpr double kGapRatio = 1e6;

int gap_rank_from_sigma(const Eigen::VectorXd& sigma, Eigen::Index rows, Eigen::Index cols,
                        double tol, double reference) {
  if (sigma.size() == 0) return 0;
  const double big = std::max(sigma(0), reference);
  if (big == 0.0) return 0;
  const double dim = static_cast<double>(std::max(rows, cols));
  int rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > tol * big * dim) ++rank;
  }
  const double floor = std::numeric_limits<double>::epsilon() * big * dim;
  for (Eigen::Index i = sigma.size() - 1; i >= rank; --i) {
    const double below = i + 1 < sigma.size() ? sigma(i + 1) : 0.0;
    if (below <= floor && sigma(i) >= kGapFloor * floor && sigma(i) >= kGapRatio * below) {
      return static_cast<int>(i) + 1;
    }
  }
  return rank;
}

}  // namespace

bool is_real(const Matrix& m) {
  return (m.imag().array() == 0.0).all();
}

bool is_real(const Vector& v) {
  return (v.imag().array() == 0.0).all();
}

double max_imag(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.imag().cwiseAbs().maxCoeff();
}

Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.size() == 0) return {};
  return full_svd(m, false, false).sigma;
}

int numerical_rank(const Matrix& m, double tol) {
  if (m.size() == 0) return 0;
  return rank_from_sigma(singular_values(m), m.rows(), m.cols(), tol);
}

int nullity(const Matrix& m, double tol) {
  return static_cast<int>(m.cols()) - numerical_rank(m, tol);
}

Matrix null_space(const Matrix& m, double tol) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  const Svd svd = full_svd(m, false, true);
  const int rank = rank_from_sigma(svd.sigma, m.rows(), m.cols(), tol);
  return svd.v.rightCols(m.cols() - rank);
}

int structural_nullity(const Matrix& m, double tol, double reference) {
  if (m.size() == 0) return static_cast<int>(m.cols());
  return static_cast<int>(m.cols()) -
         gap_rank_from_sigma(singular_values(m), m.rows(), m.cols(), tol, reference);
}

Matrix structural_null_space(const Matrix& m, double tol, double reference) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  const Svd svd = full_svd(m, false, true);
  const int rank = gap_rank_from_sigma(svd.sigma, m.rows(), m.cols(), tol, reference);
  return svd.v.rightCols(m.cols() - rank);
}

Matrix right_singular_vectors(const Matrix& m) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  return full_svd(m, false, true).v;
}

Matrix range_basis(const Matrix& m, double tol) {
  if (m.size() == 0) return Matrix(m.rows(), 0);
  const Svd svd = full_svd(m, true, false);
  const int rank = rank_from_sigma(svd.sigma, m.rows(), m.cols(), tol);
  return svd.u.leftCols(rank);
}

double cond2(const Matrix& m) {
  const Eigen::VectorXd sigma = singular_values(m);
  if (sigma.size() == 0) return 1.0;
  const double smin = sigma(sigma.size() - 1);
  if (smin == 0.0) return std::numeric_limits<double>::infinity();
  return sigma(0) / smin;
}

double norm_inf(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

cdouble determinant(const Matrix& m) {
  if (m.rows() == 0) return 1.0;
  return Eigen::PartialPivLU<Matrix>(m).determinant();
}

RankOneFactor dominant_factor(const Matrix& m) {
  RankOneFactor out;
  out.left = Vector::Zero(m.rows());
  out.right = Vector::Zero(m.cols());
  if (m.size() == 0) return out;
  const Svd svd = full_svd(m, true, true);
  out.sigma = svd.sigma(0);
  out.second_sigma = svd.sigma.size() > 1 ? svd.sigma(1) : 0.0;
  out.left = svd.sigma(0) * svd.u.col(0);
  out.right = svd.v.col(0);
  return out;
}

double sin_angle(const Vector& a, const Vector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 1.0;
  const Vector ua = a / na;
  const Vector ub = b / nb;
  const Vector orth = ub - ua * ua.dot(ub);
  return std::min(1.0, orth.norm());
}

Matrix real_part(const Matrix& m) {
  return m.real().cast<cdouble>();
}

Vector real_part(const Vector& v) {
  return v.real().cast<cdouble>();
}

}  // namespace rankone::linalg
