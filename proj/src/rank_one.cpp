#include "rankone/rank_one.hpp"

#include <algorithm>
#include <cmath>

#include "rankone/errors.hpp"
#include "rankone/linalg.hpp"

namespace rankone {

namespace {

constexpr double kDependenceTol = 1e-10;
// Relative size under which a factor counts as exactly zero.
constexpr double kZeroTol = 1e-14;

// Scale w to unit norm with its first significant entry positive real, and
// compensate in u (and v) so that the pencil is unchanged. The compensation
// factor is the same for all three forms.
void canonicalize(RankOnePencil& p) {
  const double norm = p.w.norm();
  if (norm == 0.0) return;
  const double big = p.w.cwiseAbs().maxCoeff();
  cdouble phase = 1.0;
  for (Eigen::Index i = 0; i < p.w.size(); ++i) {
    if (std::abs(p.w(i)) > 1e-8 * big) {
      phase = p.w(i) / std::abs(p.w(i));
      break;
    }
  }
  const cdouble kappa = norm * phase;
  p.w /= kappa;
  p.u *= std::conj(kappa);
  if (p.form != RankOneForm::kDegenerate) p.v *= std::conj(kappa);
  if (linalg::is_real(p.w) && p.w.size() > 0) {
    // Keep real data bit-for-bit real.
    p.w = linalg::real_part(p.w);
  }
}

bool negligible(const Vector& x, double scale) { return x.norm() <= kZeroTol * scale; }

// (s u + v) with u, v dependent collapses to (alpha s - beta) x.
bool collapse(const Vector& u, const Vector& v, double scale, cdouble& alpha, cdouble& beta,
              Vector& x) {
  if (negligible(u, scale)) {
    alpha = 0.0;
    beta = -1.0;
    x = v;
    return true;
  }
  if (negligible(v, scale)) {
    alpha = 1.0;
    beta = 0.0;
    x = u;
    return true;
  }
  if (linalg::sin_angle(u, v) >= kDependenceTol) return false;
  // v = kappa u  =>  s u + v = (s + kappa) u.
  const cdouble kappa = u.dot(v) / u.squaredNorm();
  alpha = 1.0;
  beta = -kappa;
  x = u;
  return true;
}

}  // namespace

std::string_view to_string(RankOneForm form) {
  switch (form) {
    case RankOneForm::kLeftVector:
      return "left";
    case RankOneForm::kRightVector:
      return "right";
    case RankOneForm::kDegenerate:
      return "degenerate";
  }
  return "?";
}

RankOneForm parse_rank_one_form(std::string_view text) {
  if (text == "left") return RankOneForm::kLeftVector;
  if (text == "right") return RankOneForm::kRightVector;
  if (text == "degenerate") return RankOneForm::kDegenerate;
  throw Error(ErrorCode::kInvalidInput, "unknown rank-one form '" + std::string(text) + "'");
}

bool RankOnePencil::is_real() const {
  auto real_vec = [](const Vector& x) { return x.size() == 0 || linalg::is_real(x); };
  return real_vec(u) && real_vec(v) && real_vec(w) && alpha.imag() == 0.0 && beta.imag() == 0.0;
}

RankOnePencil RankOnePencil::left(Vector u, Vector v, Vector w) {
  RankOnePencil p;
  p.form = RankOneForm::kLeftVector;
  p.u = std::move(u);
  p.v = std::move(v);
  p.w = std::move(w);
  return p;
}

RankOnePencil RankOnePencil::right(Vector u, Vector v, Vector w) {
  RankOnePencil p = left(std::move(u), std::move(v), std::move(w));
  p.form = RankOneForm::kRightVector;
  return p;
}

RankOnePencil RankOnePencil::degenerate(cdouble alpha, cdouble beta, Vector u, Vector w) {
  RankOnePencil p;
  p.form = RankOneForm::kDegenerate;
  p.alpha = alpha;
  p.beta = beta;
  p.v = Vector::Zero(u.size());
  p.u = std::move(u);
  p.w = std::move(w);
  return p;
}

RankOneMatrices materialize(const RankOnePencil& p) {
  RankOneMatrices out;
  switch (p.form) {
    case RankOneForm::kLeftVector:
      out.F = p.u * p.w.adjoint();
      out.G = -p.v * p.w.adjoint();
      break;
    case RankOneForm::kRightVector:
      out.F = p.w * p.u.adjoint();
      out.G = -p.w * p.v.adjoint();
      break;
    case RankOneForm::kDegenerate:
      out.F = p.alpha * p.u * p.w.adjoint();
      out.G = p.beta * p.u * p.w.adjoint();
      break;
  }
  return out;
}

RankOnePencil negated(const RankOnePencil& p) {
  RankOnePencil out = p;
  if (p.form == RankOneForm::kDegenerate) {
    out.alpha = -p.alpha;
    out.beta = -p.beta;
  } else {
    out.u = -p.u;
    out.v = -p.v;
  }
  return out;
}

Pencil perturb(const Pencil& a, const RankOnePencil& p) {
  const RankOneMatrices m = materialize(p);
  if (m.F.rows() != a.n()) {
    throw Error(ErrorCode::kInvalidInput, "rank-one pencil dimension differs from the pencil");
  }
  return add(a, m.F, m.G);
}

RankOnePencil decompose(const Matrix& F, const Matrix& G, double tol_rank) {
  if (F.rows() != F.cols() || G.rows() != G.cols() || F.rows() != G.rows()) {
    throw Error(ErrorCode::kInvalidInput, "decompose: F and G must be square of equal size");
  }
  const double scale = std::max(F.norm(), G.norm());
  if (scale == 0.0) throw Error(ErrorCode::kNotRankOne, "F and G are both zero");
  for (double s : {0.0, 1.0, 2.0}) {
    if (linalg::numerical_rank(s * F - G, tol_rank) > 1) {
      throw Error(ErrorCode::kNotRankOne,
                  "sF - G has rank > 1 at s = " + std::to_string(static_cast<int>(s)));
    }
  }

  RankOnePencil out;
  const Matrix D = F - G;
  if (G.norm() <= kZeroTol * scale) {
    // sF = s u w^*.
    const auto f = linalg::dominant_factor(F);
    out = RankOnePencil::degenerate(1.0, 0.0, f.left, f.right);
  } else if (D.norm() <= kZeroTol * scale) {
    // s G - G = (s - 1) u w^*.
    const auto g = linalg::dominant_factor(G);
    out = RankOnePencil::degenerate(1.0, 1.0, g.left, g.right);
  } else {
    const auto g = linalg::dominant_factor(G);  // G = u0 v0^*
    const auto d = linalg::dominant_factor(D);  // F - G = w0 z0^*
    const Vector& u0 = g.left;
    const Vector& v0 = g.right;
    const Vector& w0 = d.left;
    const Vector& z0 = d.right;
    if (linalg::sin_angle(u0, w0) >= kDependenceTol) {
      // z0 = c v0, F = (u0 + conj(c) w0) v0^*.
      const cdouble c = v0.dot(z0) / v0.squaredNorm();
      out = RankOnePencil::left(u0 + std::conj(c) * w0, -u0, v0);
    } else {
      // u0 = b w0, G = w0 (conj(b) v0)^*, F = w0 (conj(b) v0 + z0)^*.
      const cdouble b = w0.dot(u0) / w0.squaredNorm();
      out = RankOnePencil::right(std::conj(b) * v0 + z0, -std::conj(b) * v0, w0);
    }
    const double vscale = std::max(out.u.norm(), out.v.norm());
    cdouble alpha;
    cdouble beta;
    Vector x;
    if (collapse(out.u, out.v, vscale, alpha, beta, x)) {
      if (out.form == RankOneForm::kLeftVector) {
        out = RankOnePencil::degenerate(alpha, beta, x, out.w);
      } else {
        // w (s + conj kappa) x^* = (s - conj beta) w x^*.
        out = RankOnePencil::degenerate(alpha, std::conj(beta), out.w, x);
      }
    }
  }
  canonicalize(out);
  if (linalg::is_real(F) && linalg::is_real(G)) {
    out.u = linalg::real_part(out.u);
    out.v = linalg::real_part(out.v);
    out.w = linalg::real_part(out.w);
    out.alpha = out.alpha.real();
    out.beta = out.beta.real();
  }
  return out;
}

RegularityCheck degenerate_regularity_check(const Pencil& a, const RankOnePencil& p,
                                            const Tolerances& tol) {
  if (p.form != RankOneForm::kDegenerate) {
    throw Error(ErrorCode::kNotDegenerate, "regularity check needs the degenerate form");
  }
  return degenerate_regularity_check(eig_structure(a, tol), p, tol);
}

RegularityCheck degenerate_regularity_check(const SpectralData& sd, const RankOnePencil& p,
                                            const Tolerances& tol) {
  if (p.form != RankOneForm::kDegenerate) {
    throw Error(ErrorCode::kNotDegenerate, "regularity check needs the degenerate form");
  }
  if (p.alpha == 0.0 && p.beta == 0.0) {
    throw Error(ErrorCode::kInvalidInput, "degenerate form with alpha = beta = 0");
  }
  RegularityCheck out;
  out.point = p.alpha == 0.0 ? ExtComplex::infinity() : ExtComplex(p.beta / p.alpha);
  out.verdict = sd.find(out.point, tol.match) ? RegularityVerdict::kSharedEigenvalue
                                              : RegularityVerdict::kRegularGuaranteed;
  return out;
}

}  // namespace rankone
