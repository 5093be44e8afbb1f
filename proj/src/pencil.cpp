#include "rankone/pencil.hpp"

#include <algorithm>
#include <cmath>

#include "rankone/errors.hpp"
#include "rankone/kernels.hpp"
#include "rankone/linalg.hpp"

namespace rankone {

namespace {

// Relative threshold for dropping leading coefficients of det(sE - A),
// measured against the largest weighted coefficient |c_k| scale^k.
constexpr double kDegreeTrimTol = 1e-12;

}  // namespace

Pencil::Pencil(Matrix E, Matrix A) : E_(std::move(E)), A_(std::move(A)) {
  if (E_.rows() != E_.cols() || A_.rows() != A_.cols() || E_.rows() != A_.rows()) {
    throw Error(ErrorCode::kInvalidInput, "pencil matrices must be square and of equal size");
  }
  is_real_ = linalg::is_real(E_) && linalg::is_real(A_);
}

double Pencil::scale() const {
  return 1.0 + std::max(linalg::norm_inf(E_), linalg::norm_inf(A_));
}

Matrix evaluate(const Pencil& p, cdouble s0) { return s0 * p.E() - p.A(); }

namespace {

struct NodeSamples {
  std::vector<cdouble> values;
  double radius = 1.0;
};

NodeSamples sample_det(const Pencil& p) {
  NodeSamples out;
  out.radius = p.scale();
  const auto nodes = circle_nodes(p.n() + 1, out.radius);
  out.values = kernels::det_at_nodes(p.E(), p.A(), nodes);
  return out;
}

}  // namespace

CharPoly char_poly(const Pencil& p) {
  const NodeSamples samples = sample_det(p);
  Polynomial det = interpolate_on_circle(samples.values, samples.radius);
  if (p.is_real()) det = det.real_part();
  double biggest = 0.0;
  for (cdouble v : samples.values) biggest = std::max(biggest, std::abs(v));
  CharPoly out;
  // A determinant that vanishes at every node (to round-off) is the zero
  // polynomial; the pencil is singular.
  const double floor = 1e-13 * std::pow(samples.radius, p.n());
  if (biggest <= floor) {
    out.det_poly = Polynomial();
    out.finite_degree = -1;
    return out;
  }
  out.det_poly = det.trimmed(kDegreeTrimTol, samples.radius);
  out.finite_degree = out.det_poly.degree();
  return out;
}

double regularity_margin(const Pencil& p) {
  if (p.n() == 0) return 1.0;
  // sE - A of a singular pencil is rank deficient everywhere; a regular one
  // is invertible off its finitely many eigenvalues. Points on two circles
  // guard against eigenvalues sitting on one of them.
  double best = 0.0;
  for (double radius : {1.0, p.scale()}) {
    for (cdouble s0 : circle_nodes(p.n() + 1, radius, 0.37)) {
      const Eigen::VectorXd sigma = linalg::singular_values(evaluate(p, s0));
      if (sigma(0) > 0.0) best = std::max(best, sigma(sigma.size() - 1) / sigma(0));
    }
  }
  return best;
}

bool is_regular(const Pencil& p, double tol) { return regularity_margin(p) > tol; }

Pencil dualize(const Pencil& p) { return Pencil(-p.A(), -p.E()); }

Pencil add(const Pencil& a, const Matrix& F, const Matrix& G) {
  return Pencil(a.E() + F, a.A() + G);
}

}  // namespace rankone
