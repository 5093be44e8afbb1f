#include "rankone/placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <set>

#include "rankone/kernels.hpp"
#include "rankone/linalg.hpp"

namespace rankone {

namespace {

constexpr double kDivisionTol = 1e-9;
constexpr double kThetaTol = 1e-8;
constexpr double kDetIdentityTol = 1e-7;
constexpr double kGammaMin = 1e-12;
constexpr double kGammaMax = 1e12;
constexpr int kLadderSteps = 64;

cdouble target_product_at(const PlacementSpec& spec, cdouble s) {
  cdouble out = 1.0;
  for (const auto& t : spec.targets) {
    if (t.value.is_finite()) out *= std::pow(s - t.value.value(), t.mult);
  }
  return out;
}

double max_target_modulus(const PlacementSpec& spec) {
  double out = 0.0;
  for (const auto& t : spec.targets) {
    if (t.value.is_finite()) out = std::max(out, std::abs(t.value.value()));
  }
  return out;
}

Vector solve_square(const Matrix& m, const Vector& rhs) {
  return Eigen::PartialPivLU<Matrix>(m).solve(rhs);
}


// Coefficients H_k of m_A(s) (sE_w - A_w)^{-1}, read off the normal form
// rather than sampled, which stays accurate when the eigenvalues span
// several orders of magnitude. Finite part: the quotient of m_A(s) - m_A(J)
// by (s - J), by Horner in J (m_A(J) = 0). Infinite part: -m_A(s) sum_j s^j N^j.
std::vector<Matrix> resolvent_coefficients(const WeierstrassForm& wf, const Polynomial& m_A,
                                           int count) {
  const Eigen::Index r = wf.r;
  const Eigen::Index ni = wf.N.rows();
  std::vector<Matrix> H(static_cast<std::size_t>(count), Matrix::Zero(r + ni, r + ni));
  const int d = m_A.degree();
  if (r > 0 && d >= 1) {
    const Matrix I = Matrix::Identity(r, r);
    Matrix acc = m_A.coeff(d) * I;
    for (int k = d - 1; k >= 0; --k) {
      if (k < count) H[static_cast<std::size_t>(k)].topLeftCorner(r, r) = acc;
      if (k > 0) acc = wf.J * acc + m_A.coeff(k) * I;
    }
  }
  if (ni > 0) {
    Matrix power = Matrix::Identity(ni, ni);
    for (Eigen::Index j = 0; j < ni && power.norm() > 0.0; ++j) {
      for (int i = 0; i <= d; ++i) {
        const auto k = static_cast<std::size_t>(i + j);
        if (k < H.size()) H[k].bottomRightCorner(ni, ni) -= m_A.coeff(i) * power;
      }
      power = power * wf.N;
    }
  }
  return H;
}

}  // namespace

std::string format_targets(const PlacementSpec& spec) {
  std::string out;
  for (const auto& t : spec.targets) {
    if (!out.empty()) out += ",";
    out += to_string(t.value) + ":" + std::to_string(t.mult);
  }
  return out;
}

Polynomial target_polynomial(const PlacementSpec& spec) {
  Polynomial out = Polynomial::constant(1.0);
  for (const auto& t : spec.targets) {
    if (t.value.is_infinite()) continue;
    for (int k = 0; k < t.mult; ++k) out = out * Polynomial::linear_factor(t.value.value());
  }
  return out;
}

void verify_placement(const Pencil& a, const Polynomial& den, const Polynomial& num,
                      double radius, const PlacementOptions& opts, PlacementResult& result) {
  const Pencil b = perturb(a, result.perturbation);
  result.det_residual = determinant_identity_residual(a, b, den, num, radius, opts.seed);
  // An ill-conditioned sE - A + P(s) cannot have its determinant evaluated
  // more accurately than its condition number allows.
  const double allowed =
      kDetIdentityTol + determinant_rounding_bound(a, b, radius, opts.seed);
  if (!(result.det_residual <= allowed)) {
    result.failures.push_back("determinant identity off by " +
                              std::to_string(result.det_residual) + " (relative)");
  }
  try {
    result.achieved = eig_structure(b, opts.tol);
    auto mismatches = compare_spectrum(result.expected, result.achieved, opts.tol.match);
    result.failures.insert(result.failures.end(), mismatches.begin(), mismatches.end());
  } catch (const Error& e) {
    result.achieved = SpectralData{};
    result.failures.push_back(std::string("spectral analysis of A + P failed: ") + e.what());
  }
  result.verified = result.failures.empty();
}

int PlacementSpec::total() const {
  int sum = 0;
  for (const auto& t : targets) sum += t.mult;
  return sum;
}

void PlacementSpec::validate(double tol) const {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].mult <= 0) {
      throw Error(ErrorCode::kInvalidInput, "target multiplicities must be positive");
    }
    for (std::size_t j = i + 1; j < targets.size(); ++j) {
      if (near(targets[i].value, targets[j].value, tol)) {
        throw Error(ErrorCode::kInvalidInput,
                    "target " + to_string(targets[i].value) + " listed twice");
      }
    }
  }
}

bool PlacementSpec::conjugate_symmetric(double tol) const {
  for (const auto& t : targets) {
    const ExtComplex c = t.value.conj();
    const bool found = std::any_of(targets.begin(), targets.end(), [&](const Target& o) {
      return o.mult == t.mult && near(o.value, c, tol);
    });
    if (!found) return false;
  }
  return true;
}

VerificationFailure::VerificationFailure(PlacementResult result)
    : Error(ErrorCode::kVerificationFailed,
            [&] {
              std::string msg = "construction finished but verification failed";
              for (const auto& f : result.failures) msg += "; " + f;
              return msg;
            }()),
      result_(std::move(result)) {}

Polynomial theta(const Pencil& a, const Polynomial& m_A, const Vector& u, const Vector& v,
                 int count, double radius) {
  const auto nodes = circle_nodes(count, radius);
  const Vector zero = Vector::Zero(a.n());
  const auto xs = kernels::solve_at_nodes(a.E(), a.A(), nodes, zero, u);
  std::vector<cdouble> values(nodes.size());
  for (std::size_t j = 0; j < nodes.size(); ++j) values[j] = m_A(nodes[j]) * v.dot(xs[j]);
  return interpolate_on_circle(values, radius);
}

ThetaSolution solve_theta(const Pencil& a, const SpectralData& sd, const WeierstrassForm& wf,
                          const Polynomial& p, const std::optional<Vector>& fixed_v,
                          bool real_mode, const Tolerances& tol) {
  const int M = sd.M;
  const int n = a.n();
  if (p.degree() > M - 1) {
    throw Error(ErrorCode::kDegreeTooHigh, "deg p = " + std::to_string(p.degree()) +
                                               " exceeds M(A) - 1 = " + std::to_string(M - 1));
  }
  if (real_mode && (!a.is_real() || !p.is_real() || !wf.real_form)) {
    throw Error(ErrorCode::kInvalidInput, "real mode needs a real pencil, real p and real form");
  }

  Vector vhat = Vector::Zero(n);
  if (fixed_v) {
    vhat = wf.T.adjoint() * *fixed_v;
  } else {
    // One unit entry at the first row of the longest block of each eigenvalue.
    std::vector<ExtComplex> seen;
    for (const auto& blk : wf.blocks) {
      if (std::find(seen.begin(), seen.end(), blk.lambda) != seen.end()) continue;
      seen.push_back(blk.lambda);
      vhat(blk.offset) = 1.0;
    }
  }

  const std::vector<Matrix> H = resolvent_coefficients(wf, sd.m_A, M + 1);
  Matrix C(M, n);
  for (int k = 0; k < M; ++k) C.row(k) = vhat.adjoint() * H[static_cast<std::size_t>(k)];
  if (real_mode) C = linalg::real_part(C);

  const int rank = linalg::numerical_rank(C, tol.rank);
  if (rank < M) {
    throw Error(ErrorCode::kNumericallySingular, "Theta coefficient matrix has rank " +
                                                     std::to_string(rank) + " < M(A) = " +
                                                     std::to_string(M));
  }
  Vector rhs = Vector::Zero(M);
  for (int k = 0; k < M; ++k) rhs(k) = p.coeff(k);
  if (real_mode) rhs = linalg::real_part(rhs);

  Vector uhat;
  if (real_mode) {
    const Eigen::MatrixXd Cr = C.real();
    const Eigen::VectorXd br = rhs.real();
    Eigen::VectorXd x = Cr.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(br);
    uhat = x.cast<cdouble>();
  } else {
    uhat = C.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(rhs);
  }

  ThetaSolution out;
  out.u = solve_square(wf.S, uhat);
  out.v = fixed_v ? *fixed_v : solve_square(wf.T.adjoint(), vhat);
  if (real_mode) {
    out.u = linalg::real_part(out.u);
    out.v = linalg::real_part(out.v);
  }
  const Vector u_w = wf.S * out.u;
  const Vector v_w = wf.T.adjoint() * out.v;
  double diff = 0.0;
  for (int k = 0; k <= M; ++k) {
    const cdouble got = v_w.dot(H[static_cast<std::size_t>(k)] * u_w);
    diff = std::max(diff, std::abs(got - p.coeff(k)));
  }
  out.residual = diff;
  if (!(diff <= kThetaTol * std::max(1.0, p.norm_inf()))) {
    throw Error(ErrorCode::kNumericallySingular,
                "Theta residual " + std::to_string(diff) + " exceeds tolerance");
  }
  return out;
}

std::vector<SpectrumEntry> expected_spectrum(const SpectralData& sd,
                                             const std::vector<int>& orders,
                                             const PlacementSpec& spec, double tol) {
  std::vector<SpectrumEntry> out;
  std::vector<bool> used(spec.targets.size(), false);
  for (std::size_t i = 0; i < sd.eigs.size(); ++i) {
    const auto& e = sd.eigs[i];
    int dim = e.root_dim - orders[i];
    for (std::size_t t = 0; t < spec.targets.size(); ++t) {
      if (!used[t] && near(spec.targets[t].value, e.lambda, tol)) {
        dim += spec.targets[t].mult;
        used[t] = true;
        break;
      }
    }
    if (dim > 0) out.push_back({e.lambda, dim});
  }
  for (std::size_t t = 0; t < spec.targets.size(); ++t) {
    if (!used[t]) out.push_back({spec.targets[t].value, spec.targets[t].mult});
  }
  return out;
}

std::vector<std::string> compare_spectrum(const std::vector<SpectrumEntry>& expected,
                                          const SpectralData& achieved, double tol) {
  std::vector<std::string> out;
  std::vector<bool> hit(achieved.eigs.size(), false);
  for (const auto& want : expected) {
    const EigStructure* got = achieved.find(want.lambda, tol);
    if (got == nullptr) {
      out.push_back("expected eigenvalue " + to_string(want.lambda) + " missing");
      continue;
    }
    hit[static_cast<std::size_t>(got - achieved.eigs.data())] = true;
    if (got->root_dim != want.dim) {
      out.push_back("root subspace at " + to_string(want.lambda) + " has dimension " +
                    std::to_string(got->root_dim) + ", expected " + std::to_string(want.dim));
    }
  }
  for (std::size_t i = 0; i < achieved.eigs.size(); ++i) {
    if (!hit[i]) out.push_back("unexpected eigenvalue " + to_string(achieved.eigs[i].lambda));
  }
  return out;
}

namespace {

std::vector<cdouble> identity_points(double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mod(0.5, 1.5);
  std::uniform_real_distribution<double> arg(0.0, 2.0 * std::numbers::pi);
  std::vector<cdouble> points(7);
  for (auto& s : points) {
    const double r = radius * mod(rng);
    s = std::polar(r, arg(rng));
  }
  return points;
}

}  // namespace

double determinant_identity_residual(const Pencil& a, const Pencil& b, const Polynomial& den,
                                     const Polynomial& num, double radius, std::uint64_t seed) {
  const auto points = identity_points(radius, seed);
  const auto det_a = kernels::det_at_nodes(a.E(), a.A(), points);
  const auto det_b = kernels::det_at_nodes(b.E(), b.A(), points);
  double worst = 0.0;
  for (std::size_t j = 0; j < points.size(); ++j) {
    const cdouble lhs = det_b[j] * den(points[j]);
    const cdouble rhs = det_a[j] * num(points[j]);
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    if (scale == 0.0) continue;
    worst = std::max(worst, std::abs(lhs - rhs) / scale);
  }
  return worst;
}

double determinant_rounding_bound(const Pencil& a, const Pencil& b, double radius,
                                  std::uint64_t seed) {
  const double unit = 64.0 * std::numeric_limits<double>::epsilon() * std::max(a.n(), 1);
  double worst = 0.0;
  for (cdouble s : identity_points(radius, seed)) {
    const double kappa = linalg::cond2(evaluate(a, s)) + linalg::cond2(evaluate(b, s));
    worst = std::max(worst, unit * kappa);
  }
  return worst;
}

PlacementResult place(const Pencil& a, const PlacementSpec& spec, const PlacementOptions& opts) {
  return place(a, eig_structure(a, opts.tol), spec, opts);
}

PlacementResult place(const Pencil& a, const SpectralData& sd, const PlacementSpec& spec,
                      const PlacementOptions& opts) {
  const Tolerances& tol = opts.tol;
  spec.validate(tol.match);
  if (spec.budget >= 0 && spec.budget != spec.total()) {
    throw Error(ErrorCode::kBudgetMismatch, "budget " + std::to_string(spec.budget) +
                                                " differs from the target total " +
                                                std::to_string(spec.total()));
  }
  if (spec.total() != sd.M) {
    throw Error(ErrorCode::kBudgetMismatch,
                "M(A) = " + std::to_string(sd.M) + " but the targets " + format_targets(spec) +
                    " total " + std::to_string(spec.total()));
  }
  if (opts.real_mode) {
    if (!a.is_real()) throw Error(ErrorCode::kInvalidInput, "real mode needs a real pencil");
    if (!spec.conjugate_symmetric(tol.match)) {
      throw Error(ErrorCode::kInvalidInput, "real mode needs conjugate-symmetric targets");
    }
  }
  const WeierstrassForm wf = weierstrass(a, sd, opts.real_mode, tol);

  // beta ladder: base, 2 base, 4 base, ... until gamma is of moderate size.
  const double base = 1.0 + max_target_modulus(spec) + sd.max_finite_modulus();
  cdouble beta = base;
  cdouble gamma = 0.0;
  bool found = false;
  for (int step = 0; step < kLadderSteps && !found; ++step) {
    beta = std::ldexp(base, step);
    const double sep = tol.cluster * std::max(1.0, std::abs(beta));
    bool clear = true;
    for (const auto& t : spec.targets) {
      if (t.value.is_finite() && std::abs(t.value.value() - beta) < sep) clear = false;
    }
    for (const auto& e : sd.eigs) {
      if (e.lambda.is_finite() && std::abs(e.lambda.value() - beta) < sep) clear = false;
    }
    if (!clear) continue;
    gamma = sd.m_A(beta) / target_product_at(spec, beta);
    if (opts.real_mode) gamma = gamma.real();
    const double g = std::abs(gamma);
    found = g >= kGammaMin && g <= kGammaMax;
  }
  if (!found) {
    throw Error(ErrorCode::kIllConditioned, "no ladder point keeps |gamma| within [1e-12, 1e12]");
  }

  PlacementResult result;
  result.alpha = 1.0;
  result.beta = beta;
  result.gamma = gamma;
  result.q_gamma = gamma * target_polynomial(spec);
  if (opts.real_mode) result.q_gamma = result.q_gamma.real_part();

  const auto division = (result.q_gamma - sd.m_A).divide_linear(beta);
  // The remainder is a Horner evaluation at beta; its rounding grows with
  // sum |c_k| |beta|^k, which for large beta dwarfs ||q_gamma||_inf.
  double horner_scale = 0.0;
  for (int k = 0; k <= std::max(result.q_gamma.degree(), sd.m_A.degree()); ++k) {
    horner_scale += (std::abs(result.q_gamma.coeff(k)) + std::abs(sd.m_A.coeff(k))) *
                    std::pow(std::abs(beta), k);
  }
  const double division_scale = std::max({1.0, result.q_gamma.norm_inf(), horner_scale});
  if (!(std::abs(division.remainder) <= kDivisionTol * division_scale)) {
    throw Error(ErrorCode::kNumericallySingular,
                "(q_gamma - m_A) not divisible by (s - beta): remainder " +
                    std::to_string(std::abs(division.remainder)));
  }
  Polynomial p = division.quotient.resized(std::max(sd.M, 1));
  if (opts.real_mode) p = p.real_part();
  const ThetaSolution sol = solve_theta(a, sd, wf, p, std::nullopt, opts.real_mode, tol);
  result.solve_residual = sol.residual;
  result.perturbation = RankOnePencil::degenerate(result.alpha, result.beta, sol.u, sol.v);

  std::vector<int> orders;
  for (const auto& e : sd.eigs) orders.push_back(e.m1());
  result.expected = expected_spectrum(sd, orders, spec, tol.match);

  const double radius =
      1.0 + std::max({std::abs(beta), sd.max_finite_modulus(), max_target_modulus(spec)});
  verify_placement(a, sd.m_A, result.q_gamma, radius, opts, result);
  if (!result.verified) throw VerificationFailure(std::move(result));
  return result;
}

PlacementResult place_single_chain(const Pencil& a, const PlacementSpec& spec,
                                   const PlacementOptions& opts) {
  const SpectralData sd = eig_structure(a, opts.tol);
  for (const auto& e : sd.eigs) {
    if (e.geometric() != 1) {
      throw Error(ErrorCode::kPreconditionViolated,
                  "eigenvalue " + to_string(e.lambda) + " has " + std::to_string(e.geometric()) +
                      " Jordan chains");
    }
  }
  PlacementResult result = place(a, sd, spec, opts);
  for (const auto& t : spec.targets) {
    const EigStructure* got = result.achieved.find(t.value, opts.tol.match);
    if (got != nullptr && got->geometric() != 1) {
      result.failures.push_back("target " + to_string(t.value) + " carries " +
                                std::to_string(got->geometric()) + " chains");
    }
  }
  result.verified = result.failures.empty();
  if (!result.verified) throw VerificationFailure(std::move(result));
  return result;
}

Pencil single_chain_pencil(const std::vector<Target>& before) {
  int n = 0;
  for (const auto& t : before) n += t.mult;
  Matrix E = Matrix::Zero(n, n);
  Matrix A = Matrix::Zero(n, n);
  int at = 0;
  for (const auto& t : before) {
    for (int k = 0; k < t.mult; ++k) {
      if (t.value.is_infinite()) {
        A(at + k, at + k) = 1.0;
        if (k > 0) E(at + k - 1, at + k) = 1.0;
      } else {
        E(at + k, at + k) = 1.0;
        A(at + k, at + k) = t.value.value();
        if (k > 0) A(at + k - 1, at + k) = 1.0;
      }
    }
    at += t.mult;
  }
  return Pencil(E, A);
}

InverseResult inverse_construct(const std::vector<Target>& before,
                                const std::vector<Target>& after, const PlacementOptions& opts) {
  PlacementSpec b{before, -1};
  PlacementSpec c{after, -1};
  b.validate(opts.tol.match);
  c.validate(opts.tol.match);
  if (b.total() != c.total() || b.total() == 0) {
    throw Error(ErrorCode::kTotalMismatch, "before totals " + std::to_string(b.total()) +
                                               " but after totals " + std::to_string(c.total()));
  }
  InverseResult out;
  out.pencil = single_chain_pencil(before);
  out.placement = place_single_chain(out.pencil, c, opts);
  return out;
}

}  // namespace rankone
