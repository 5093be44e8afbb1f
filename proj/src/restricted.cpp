#include "rankone/restricted.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "rankone/linalg.hpp"

namespace rankone {

namespace {

constexpr double kPoleTol = 1e-8;
constexpr double kDependentTol = 1e-10;
constexpr double kSolveTol = 1e-8;
constexpr int kAutoVAttempts = 16;
constexpr double kGammaMin = 1e-12;

double vec_inf(const Vector& x) { return x.size() == 0 ? 0.0 : x.cwiseAbs().maxCoeff(); }

// Index into sd.eigs of the block eigenvalue.
int eig_index(const SpectralData& sd, const ExtComplex& lambda, double tol) {
  const EigStructure* e = sd.find(lambda, tol);
  if (e == nullptr) {
    throw Error(ErrorCode::kStructureInconsistent,
                "Weierstrass block at " + to_string(lambda) + " has no eigenvalue");
  }
  return static_cast<int>(e - sd.eigs.data());
}

// Pole order of one Jordan block applied to s a + b (a, b in block
// coordinates). Finite lambda: the coefficient of (s - lambda)^{-d} has top
// entry c_d + a_{d+1} with c = lambda a + b. Infinity: the coefficient of
// s^d has top entry a_d + b_{d+1}.
int block_pole_order(const WeierstrassBlock& blk, const Vector& uhat, const Vector& vhat,
                     double thr) {
  const int k = blk.size;
  auto a = [&](int i) -> cdouble { return i >= 1 && i <= k ? uhat(blk.offset + i - 1) : 0.0; };
  auto b = [&](int i) -> cdouble { return i >= 1 && i <= k ? vhat(blk.offset + i - 1) : 0.0; };
  for (int d = k; d >= 1; --d) {
    cdouble top;
    if (blk.lambda.is_finite()) {
      top = blk.lambda.value() * a(d) + b(d) + a(d + 1);
    } else {
      top = a(d) + b(d + 1);
    }
    if (std::abs(top) > thr) return d;
  }
  return 0;
}

bool is_zero_vector(const Vector& x, double scale) {
  return vec_inf(x) <= 1e-14 * std::max(scale, 1e-300) || vec_inf(x) == 0.0;
}

bool has_target(const PlacementSpec& spec, const ExtComplex& z, double tol) {
  return std::any_of(spec.targets.begin(), spec.targets.end(),
                     [&](const Target& t) { return near(t.value, z, tol); });
}

double max_target_modulus(const PlacementSpec& spec) {
  double out = 0.0;
  for (const auto& t : spec.targets) {
    if (t.value.is_finite()) out = std::max(out, std::abs(t.value.value()));
  }
  return out;
}

// Coefficient matrix of w-hat -> m_tilde(s) (sE_w - A_w)^{-1}(s a + b) in
// Weierstrass coordinates: row k holds the coefficient vector of s^k.
// Finite part: m_tilde(s) a + Q(s)(J a + b) with Q the Horner quotient of
// m_tilde by (s - J); the remainder m_tilde(J)(J a + b) vanishes by the
// choice of pole orders. Infinite part: -m_tilde(s) sum_j s^j N^j (s a + b).
Matrix restricted_coefficients(const WeierstrassForm& wf, const Polynomial& m_tilde,
                               const Vector& a, const Vector& b) {
  const Eigen::Index r = wf.r;
  const Eigen::Index ni = wf.N.rows();
  const int d = std::max(m_tilde.degree(), 0);
  const int rows = d + static_cast<int>(ni) + 2;
  Matrix G = Matrix::Zero(rows, r + ni);
  if (r > 0) {
    const Vector af = a.head(r);
    const Vector y = wf.J * af + b.head(r);
    for (int k = 0; k <= d; ++k) G.row(k).head(r) += m_tilde.coeff(k) * af.transpose();
    Vector acc = m_tilde.coeff(d) * y;
    for (int k = d - 1; k >= 0; --k) {
      G.row(k).head(r) += acc.transpose();
      if (k > 0) acc = wf.J * acc + m_tilde.coeff(k) * y;
    }
  }
  if (ni > 0) {
    Vector z = a.tail(ni);
    Vector y = b.tail(ni);
    for (Eigen::Index j = 0; j < ni; ++j) {
      for (int i = 0; i <= d; ++i) {
        const auto k = static_cast<Eigen::Index>(i + j);
        G.row(k).tail(ni) -= m_tilde.coeff(i) * y.transpose();
        G.row(k + 1).tail(ni) -= m_tilde.coeff(i) * z.transpose();
      }
      z = wf.N * z;
      y = wf.N * y;
    }
  }
  return G;
}

// Least-squares solve with an exact-solvability check on the residual.
bool solve_restricted(const Matrix& G, const Vector& rhs, bool real_mode, Vector& x,
                      double& residual) {
  if (real_mode) {
    const Eigen::MatrixXd Gr = G.real();
    const Eigen::VectorXd br = rhs.real();
    const Eigen::VectorXd xr = Gr.completeOrthogonalDecomposition().solve(br);
    x = xr.cast<cdouble>();
  } else {
    x = G.completeOrthogonalDecomposition().solve(rhs);
  }
  residual = vec_inf(G * x - rhs);
  const double allowed =
      kSolveTol * std::max({1.0, vec_inf(rhs), linalg::norm_inf(G) * vec_inf(x)});
  return residual <= allowed;
}

}  // namespace

const PoleProfile::Entry* PoleProfile::find(const ExtComplex& z, double tol) const {
  for (const auto& e : entries) {
    if (near(e.lambda, z, tol)) return &e;
  }
  return nullptr;
}

PoleProfile pole_profile(const Pencil& a, const Vector& u, const Vector& v,
                         const Tolerances& tol) {
  return pole_profile(a, eig_structure(a, tol), u, v, tol);
}

PoleProfile pole_profile(const Pencil& a, const SpectralData& sd, const Vector& u,
                         const Vector& v, const Tolerances& tol) {
  if (u.size() != a.n() || v.size() != a.n()) {
    throw Error(ErrorCode::kInvalidInput, "u and v must have length n");
  }
  PoleProfile out;
  for (const auto& e : sd.eigs) out.entries.push_back({e.lambda, 0, e.m1()});
  if (!sd.eigs.empty()) {
    const WeierstrassForm wf = weierstrass(a, sd, false, tol);
    const Vector uhat = wf.S * u;
    const Vector vhat = wf.S * v;
    const double unorm = vec_inf(uhat);
    const double vnorm = vec_inf(vhat);
    for (const auto& blk : wf.blocks) {
      const double lam = blk.lambda.is_finite() ? std::max(1.0, std::abs(blk.lambda.value())) : 1.0;
      const double thr = kPoleTol * (lam * unorm + vnorm);
      if (thr == 0.0) continue;
      const int idx = eig_index(sd, blk.lambda, tol.match);
      auto& entry = out.entries[static_cast<std::size_t>(idx)];
      entry.order = std::max(entry.order, block_pole_order(blk, uhat, vhat, thr));
    }
  }
  for (const auto& e : out.entries) {
    out.M_uv += e.order;
    if (e.lambda.is_finite()) {
      for (int k = 0; k < e.order; ++k) {
        out.m_tilde = out.m_tilde * Polynomial::linear_factor(e.lambda.value());
      }
    }
  }
  return out;
}

std::vector<ExtComplex> spectrum_floor(const Pencil& a, const Vector& u, const Vector& v,
                                       const Tolerances& tol) {
  const SpectralData sd = eig_structure(a, tol);
  const PoleProfile profile = pole_profile(a, sd, u, v, tol);
  std::vector<ExtComplex> out;
  for (std::size_t i = 0; i < sd.eigs.size(); ++i) {
    if (sd.eigs[i].geometric() >= 2 || profile.entries[i].order < profile.entries[i].m1) {
      out.push_back(sd.eigs[i].lambda);
    }
  }
  return out;
}

BoundsReport check_restricted_bounds(const SpectralData& before, const PoleProfile& profile,
                                     const SpectralData& after, double match_tol) {
  if (before.n != after.n) {
    throw Error(ErrorCode::kInvalidInput, "spectral data of different dimensions");
  }
  const int M = profile.M_uv;
  BoundsReport out;
  std::vector<bool> matched(after.eigs.size(), false);
  int sum_old = 0;
  int sum_new = 0;
  auto push = [&](const char* check, const ExtComplex& lambda, int before_dim, int value,
                  int lower, int upper) {
    BoundRecord r;
    r.check = check;
    r.lambda = lambda;
    r.before = before_dim;
    r.after = value;
    r.value = value;
    r.lower = lower;
    r.upper = upper;
    r.slack = std::min(value - lower, upper - value);
    r.satisfied = r.slack >= 0;
    out.records.push_back(r);
    return &out.records.back();
  };
  for (std::size_t i = 0; i < before.eigs.size(); ++i) {
    const auto& e = before.eigs[i];
    const EigStructure* f = after.find(e.lambda, match_tol);
    if (f != nullptr) matched[static_cast<std::size_t>(f - after.eigs.data())] = true;
    const int dim_b = f ? f->root_dim : 0;
    const int order = profile.entries[i].order;
    push(checks::kRootDim, e.lambda, e.root_dim, dim_b, e.root_dim - order,
         e.root_dim + M - order);
    sum_old += dim_b;
  }
  for (std::size_t i = 0; i < after.eigs.size(); ++i) {
    if (matched[i]) continue;
    push(checks::kNewRootDim, after.eigs[i].lambda, 0, after.eigs[i].root_dim, 0, M);
    sum_new += after.eigs[i].root_dim;
  }
  push(checks::kSumOld, ExtComplex(), before.n, sum_old, before.n - M, before.n)->has_lambda =
      false;
  push(checks::kSumNew, ExtComplex(), 0, sum_new, 0, M)->has_lambda = false;
  return out;
}

BoundsReport check_restricted_bounds(const Pencil& a, const Vector& u, const Vector& v,
                                     const Vector& w, const Tolerances& tol) {
  const SpectralData before = eig_structure(a, tol);
  const PoleProfile profile = pole_profile(a, before, u, v, tol);
  const SpectralData after = eig_structure(perturb(a, RankOnePencil::left(u, v, w)), tol);
  return check_restricted_bounds(before, profile, after, tol.match);
}

PlacementResult solve_w(const Pencil& a, const Vector& u, const Vector& v,
                        const PlacementSpec& spec, const PlacementOptions& opts) {
  const Tolerances& tol = opts.tol;
  const int n = a.n();
  spec.validate(tol.match);
  const SpectralData sd = eig_structure(a, tol);
  const PoleProfile profile = pole_profile(a, sd, u, v, tol);

  if (spec.budget >= 0 && spec.budget != spec.total()) {
    throw Error(ErrorCode::kBudgetMismatch, "budget " + std::to_string(spec.budget) +
                                                " differs from the target total " +
                                                std::to_string(spec.total()));
  }
  if (spec.total() != profile.M_uv) {
    throw Error(ErrorCode::kBudgetMismatch,
                "M(A,u,v) = " + std::to_string(profile.M_uv) + " but the targets " +
                    format_targets(spec) + " total " + std::to_string(spec.total()));
  }
  if (opts.real_mode) {
    if (!a.is_real() || !linalg::is_real(u) || !linalg::is_real(v)) {
      throw Error(ErrorCode::kInvalidInput, "real mode needs a real pencil and real u, v");
    }
    if (!spec.conjugate_symmetric(tol.match)) {
      throw Error(ErrorCode::kInvalidInput, "real mode needs conjugate-symmetric targets");
    }
  }

  // Dependent u, v: the excluded point mu (v = -mu u), or infinity for u = 0.
  const double scale = std::max(vec_inf(u), vec_inf(v));
  const bool u_zero = is_zero_vector(u, scale);
  const bool v_zero = is_zero_vector(v, scale);
  std::optional<ExtComplex> excluded;
  if (!u_zero && (v_zero || linalg::sin_angle(u, v) < kDependentTol)) {
    excluded = ExtComplex(-u.dot(v) / u.squaredNorm());
  } else if (u_zero && !v_zero) {
    excluded = ExtComplex::infinity();
  }

  Polynomial m_tilde = profile.m_tilde;
  if (opts.real_mode) m_tilde = m_tilde.real_part();
  const Polynomial pi = target_polynomial(spec);
  cdouble gamma = 1.0;
  if (excluded && sd.find(*excluded, tol.match) == nullptr) {
    if (has_target(spec, *excluded, tol.match)) {
      throw Error(ErrorCode::kHypothesisViolated,
                  "u and v are dependent with excluded point " + to_string(*excluded) +
                      ", which is not an eigenvalue of A and so cannot be a target");
    }
    if (excluded->is_finite()) {
      gamma = m_tilde(excluded->value()) / pi(excluded->value());
      if (opts.real_mode) gamma = gamma.real();
    }
  }
  const WeierstrassForm wf = weierstrass(a, sd, opts.real_mode, tol);
  if (excluded && sd.find(*excluded, tol.match) != nullptr &&
      has_target(spec, *excluded, tol.match)) {
    // P(s) vanishes at the excluded point; the multiplicity there can only
    // grow through the part of u (v when u = 0) in its root subspace.
    const Vector xhat = wf.S * (u_zero ? v : u);
    double part = 0.0;
    for (const auto& blk : wf.blocks) {
      if (!near(blk.lambda, *excluded, tol.match)) continue;
      const int width = blk.conjugate_pair ? 2 * blk.size : blk.size;
      part = std::max(part, vec_inf(xhat.segment(blk.offset, width)));
    }
    if (!(part > kPoleTol * vec_inf(xhat))) {
      throw Error(ErrorCode::kHypothesisViolated,
                  "u and v are dependent with excluded point " + to_string(*excluded) +
                      ", and " + (u_zero ? "v" : "u") +
                      " has no component in its root subspace, so it cannot be a target");
    }
  }
  const Matrix G = restricted_coefficients(wf, m_tilde, wf.S * u, wf.S * v);
  auto coefficients = [&](const Polynomial& p) {
    if (p.degree() >= G.rows()) {
      throw Error(ErrorCode::kNumericallySingular, "target polynomial degree exceeds the map");
    }
    Vector out = Vector::Zero(G.rows());
    for (int k = 0; k <= p.degree(); ++k) out(k) = p.coeff(k);
    return out;
  };

  // First with gamma fixed. When u is not a multiple of v the leading
  // coefficient of det(A + P) moves with w, so gamma may have to be
  // solved for as well: [G, -pi] (x, gamma) = -m_tilde.
  Vector x;
  double residual = 0.0;
  if (!solve_restricted(G, coefficients(gamma * pi - m_tilde), opts.real_mode, x, residual)) {
    Matrix Ga(G.rows(), G.cols() + 1);
    Ga << G, -coefficients(pi);
    Vector xa;
    if (!solve_restricted(Ga, -coefficients(m_tilde), opts.real_mode, xa, residual)) {
      throw Error(ErrorCode::kNumericallySingular,
                  "restricted coefficient system has residual " + std::to_string(residual));
    }
    gamma = xa(G.cols());
    if (!(std::abs(gamma) > kGammaMin * std::max(1.0, vec_inf(xa)))) {
      throw Error(ErrorCode::kNumericallySingular,
                  "the only solutions make sE - A + P(s) singular");
    }
    x = xa.head(G.cols());
  }
  const Polynomial q = gamma * pi;
  const Vector what = x.conjugate();
  Vector w = Eigen::PartialPivLU<Matrix>(wf.T.adjoint()).solve(what);
  if (opts.real_mode) w = linalg::real_part(w);
  if (w.size() != n) throw Error(ErrorCode::kInvalidInput, "dimension mismatch");

  PlacementResult result;
  result.perturbation = RankOnePencil::left(u, v, w);
  result.gamma = gamma;
  result.q_gamma = q;
  result.solve_residual = residual;
  std::vector<int> orders;
  for (const auto& e : profile.entries) orders.push_back(e.order);
  result.expected = expected_spectrum(sd, orders, spec, tol.match);

  double radius = 1.0 + std::max(sd.max_finite_modulus(), max_target_modulus(spec));
  if (excluded && excluded->is_finite()) {
    radius = std::max(radius, 1.0 + std::abs(excluded->value()));
  }
  verify_placement(a, m_tilde, q, radius, opts, result);
  if (!result.verified) throw VerificationFailure(std::move(result));
  return result;
}

Vector auto_select_v(const Matrix& A0, const PlacementOptions& opts) {
  const int n = static_cast<int>(A0.rows());
  const Pencil a(Matrix::Identity(n, n), A0);
  const SpectralData sd = eig_structure(a, opts.tol);
  const Vector zero = Vector::Zero(n);
  auto full = [&](const Vector& v) {
    const PoleProfile p = pole_profile(a, sd, zero, v, opts.tol);
    return std::all_of(p.entries.begin(), p.entries.end(),
                       [](const PoleProfile::Entry& e) { return e.order == e.m1; });
  };
  const bool want_real = opts.real_mode || a.is_real();

  // Unit entry at the end of the longest block of each eigenvalue, pulled
  // back to the original coordinates.
  const WeierstrassForm wf = weierstrass(a, sd, false, opts.tol);
  Vector vhat = Vector::Zero(n);
  std::vector<ExtComplex> seen;
  for (const auto& blk : wf.blocks) {
    if (std::find(seen.begin(), seen.end(), blk.lambda) != seen.end()) continue;
    seen.push_back(blk.lambda);
    vhat(blk.offset + blk.size - 1) = 1.0;
  }
  Vector v = Eigen::PartialPivLU<Matrix>(wf.S).solve(vhat);
  if (want_real) v = linalg::real_part(v);
  if (full(v)) return v / vec_inf(v);

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < kAutoVAttempts; ++attempt) {
    for (int i = 0; i < n; ++i) {
      v(i) = want_real ? cdouble(normal(rng)) : cdouble(normal(rng), normal(rng));
    }
    if (full(v)) return v;
  }
  throw Error(ErrorCode::kNumericallySingular, "no v reaches the full pole orders");
}

PlacementResult place_matrix(const Matrix& A0, const std::optional<Vector>& v,
                             const PlacementSpec& spec, const PlacementOptions& opts) {
  if (A0.rows() != A0.cols()) throw Error(ErrorCode::kInvalidInput, "A0 must be square");
  const int n = static_cast<int>(A0.rows());
  const Pencil a(Matrix::Identity(n, n), A0);
  const Vector vv = v ? *v : auto_select_v(A0, opts);
  // sI - (A0 + v w^*) = sI - A0 + (-v) w^*
  return solve_w(a, Vector::Zero(n), -vv, spec, opts);
}

}  // namespace rankone
