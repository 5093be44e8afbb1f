#include "rankone/spectral.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <set>

#include <Eigen/Eigenvalues>

#include "rankone/errors.hpp"
#include "rankone/kernels.hpp"
#include "rankone/linalg.hpp"

namespace rankone {

namespace {

// Cluster centres whose imaginary part is below this (relative) are real.
constexpr double kRealSnapTol = 1e-8;
constexpr double kIllConditionedBound = 1e12;

// B_k(lambda): block lower bidiagonal, diagonal (A - lambda E), subdiagonal -E.
Matrix chain_matrix(const Matrix& E, const Matrix& A, cdouble lambda, int k) {
  const Eigen::Index n = E.rows();
  Matrix B = Matrix::Zero(k * n, k * n);
  const Matrix diag = A - lambda * E;
  for (int i = 0; i < k; ++i) {
    B.block(i * n, i * n, n, n) = diag;
    if (i > 0) B.block(i * n, (i - 1) * n, n, n) = -E;
  }
  return B;
}

// Rank decisions on B_k are made relative to the pencil, not to B_k alone:
// A - lambda E can be tiny because lambda is an eigenvalue of a nearly zero A.
double chain_reference(const Matrix& E, const Matrix& A) {
  const auto top = [](const Matrix& m) {
    return m.size() == 0 ? 0.0 : linalg::singular_values(m)(0);
  };
  return std::max(top(E), top(A));
}

// The finite-eigenvalue machinery is applied to (E, A) at lambda, or to the
// dual pencil at 0 for lambda = infinity.
struct Site {
  Matrix E;
  Matrix A;
  cdouble at;
};

Site site_for(const Pencil& p, const ExtComplex& lambda) {
  if (lambda.is_infinite()) return {-p.A(), -p.E(), 0.0};
  return {p.E(), p.A(), lambda.value()};
}

// nu_1..nu_K, stopping once nu_k == nu_{k-1} (the repeated value is dropped)
// or k == k_cap.
std::vector<int> tower_until_stable(const Matrix& E, const Matrix& A, cdouble lambda, double tol,
                                    int k_cap) {
  const double ref = chain_reference(E, A);
  std::vector<int> tower;
  int prev = 0;
  for (int k = 1; k <= k_cap; ++k) {
    const int nu = linalg::structural_nullity(chain_matrix(E, A, lambda, k), tol, ref);
    if (nu == prev) break;
    tower.push_back(nu);
    prev = nu;
  }
  return tower;
}

bool is_monotone_tower(const std::vector<int>& tower) {
  int prev_nu = 0;
  int prev_step = tower.empty() ? 0 : tower.front();
  for (int nu : tower) {
    const int step = nu - prev_nu;
    if (step <= 0 || step > prev_step) return false;
    prev_step = step;
    prev_nu = nu;
  }
  return true;
}

// Relative single-linkage radii, coarse to fine. The finest level is the
// clustering tolerance itself: roots closer than that always share a group.
constexpr std::array<double, 9> kLinkage = {3e-2, 1e-2, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5, 1e-6};

std::vector<double> linkage_levels(double cluster_tol) {
  std::vector<double> out;
  for (double d : kLinkage) {
    if (d > cluster_tol) out.push_back(d);
  }
  out.push_back(cluster_tol);
  return out;
}

std::vector<std::vector<int>> link(const std::vector<cdouble>& raw, const std::vector<int>& members,
                                   double d) {
  std::vector<int> parent(members.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = i + 1; j < members.size(); ++j) {
      const cdouble x = raw[static_cast<std::size_t>(members[i])];
      const cdouble y = raw[static_cast<std::size_t>(members[j])];
      if (std::abs(x - y) <= d * std::max({1.0, std::abs(x), std::abs(y)})) {
        parent[static_cast<std::size_t>(find(static_cast<int>(j)))] = find(static_cast<int>(i));
      }
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> slot(members.size(), -1);
  for (std::size_t i = 0; i < members.size(); ++i) {
    const auto root = static_cast<std::size_t>(find(static_cast<int>(i)));
    if (slot[root] < 0) {
      slot[root] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[static_cast<std::size_t>(slot[root])].push_back(members[i]);
  }
  return groups;
}

// The eigenvalues of a floating-point pencil near a multiple eigenvalue are
// scattered, so a group of computed roots is re-located by the argument
// principle on a circle around it: with f = d/ds log det(sE - A),
//   (1/2 pi i) oint f ds = #roots inside,  (1/2 pi i) oint s f ds = their sum.
// Both integrals are well conditioned away from the roots, so the centroid
// of a multiple root comes out to near machine precision. Empty if the
// enclosed count disagrees with the group size.
constexpr int kContourNodes = 64;

std::optional<cdouble> locate(const Matrix& E, const Matrix& A, const std::vector<cdouble>& raw,
                              const std::vector<int>& group) {
  cdouble center = 0.0;
  for (int idx : group) center += raw[static_cast<std::size_t>(idx)];
  center /= static_cast<double>(group.size());
  double spread = 0.0;
  for (int idx : group) spread = std::max(spread, std::abs(raw[static_cast<std::size_t>(idx)] - center));
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (std::find(group.begin(), group.end(), static_cast<int>(i)) == group.end()) {
      gap = std::min(gap, std::abs(raw[i] - center));
    }
  }
  const double rho = std::isfinite(gap)
                         ? 0.5 * gap
                         : std::max(8.0 * spread, 0.5 * std::max(1.0, std::abs(center)));
  if (!(rho > spread)) return std::nullopt;
  std::vector<cdouble> nodes = circle_nodes(kContourNodes, rho);
  for (cdouble& s : nodes) s += center;
  const auto f = kernels::log_det_derivative_at_nodes(E, A, nodes);
  cdouble count = 0.0;
  cdouble first = 0.0;
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    const cdouble w = (nodes[j] - center) * f[j];
    count += w;
    first += w * (nodes[j] - center);
  }
  count /= static_cast<double>(kContourNodes);
  first /= static_cast<double>(kContourNodes);
  if (std::abs(count - static_cast<double>(group.size())) > 0.25) return std::nullopt;
  return center + first / static_cast<double>(group.size());
}

EigStructure make_structure(const ExtComplex& lambda, std::vector<int> tower) {
  EigStructure e;
  e.lambda = lambda;
  e.segre = segre_from_tower(tower);
  e.root_dim = tower.empty() ? 0 : tower.back();
  e.nullity_tower = std::move(tower);
  return e;
}

// A group is accepted when the nullity tower at its located centre reports
// exactly as many root-subspace dimensions as the group has roots. Groups
// that fail are split at the next finer linkage level. Trying coarse levels
// first means that a multiple eigenvalue, which rounding has scattered into
// nearby simple ones, is recognised as a whole.
class Resolver {
 public:
  Resolver(const Pencil& p, const std::vector<cdouble>& raw, const Tolerances& tol)
      : p_(p), raw_(raw), tol_rank_(tol.rank), levels_(linkage_levels(tol.cluster)) {}

  bool resolve(const std::vector<int>& members, std::size_t level) {
    for (const auto& group : link(raw_, members, levels_[level])) {
      if (accept(group)) continue;
      if (level + 1 == levels_.size()) return false;
      if (!resolve(group, level + 1)) return false;
    }
    return true;
  }

  std::vector<EigStructure> take() { return std::move(out_); }

 private:
  bool accept(const std::vector<int>& group) {
    if (!tried_.insert(group).second) return false;
    const auto located = locate(p_.E(), p_.A(), raw_, group);
    if (!located) return false;
    cdouble center = *located;
    if (p_.is_real() &&
        std::abs(center.imag()) <= kRealSnapTol * std::max(1.0, std::abs(center))) {
      center = center.real();
    }
    std::vector<int> tower =
        tower_until_stable(p_.E(), p_.A(), center, tol_rank_, std::max(p_.n(), 1));
    const int size = static_cast<int>(group.size());
    if (tower.empty() || tower.back() != size || !is_monotone_tower(tower)) return false;
    out_.push_back(make_structure(center, std::move(tower)));
    return true;
  }

  const Pencil& p_;
  const std::vector<cdouble>& raw_;
  double tol_rank_;
  std::vector<double> levels_;
  std::set<std::vector<int>> tried_;
  std::vector<EigStructure> out_;
};

// Finite eigenvalues from a shift-and-invert: with K = (sigma E - A)^{-1} E,
// K x = x / (sigma - lambda), and infinite eigenvalues map to 0. Unlike roots
// of the interpolated determinant, this does not degrade when the pencil
// norm dwarfs its eigenvalues. The shift is the best conditioned of a few
// candidates at an irrational angle.
std::vector<cdouble> shifted_roots(const Pencil& p, int r) {
  const double scale = p.scale();
  cdouble sigma = 0.0;
  double best = std::numeric_limits<double>::infinity();
  for (double radius : {0.7, 1.9, 4.3, 11.0, 29.0, 0.05 * scale, 0.5 * scale, 3.0 * scale}) {
    const cdouble cand = std::polar(radius, 2.399963);
    const double c = linalg::cond2(cand * p.E() - p.A());
    if (c < best) {
      best = c;
      sigma = cand;
    }
  }
  const Matrix K = (sigma * p.E() - p.A()).partialPivLu().solve(p.E());
  Eigen::ComplexEigenSolver<Matrix> es(K, false);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorCode::kNumericallySingular, "eigenvalue iteration did not converge");
  }
  std::vector<cdouble> mu(es.eigenvalues().begin(), es.eigenvalues().end());
  std::sort(mu.begin(), mu.end(), [](cdouble a, cdouble b) { return std::abs(a) > std::abs(b); });
  std::vector<cdouble> out;
  for (int i = 0; i < r; ++i) out.push_back(sigma - 1.0 / mu[static_cast<std::size_t>(i)]);
  return out;
}

// Real pencils: make conjugate pairs exact.
void pair_conjugates(std::vector<EigStructure>& eigs) {
  std::vector<bool> paired(eigs.size(), false);
  for (std::size_t i = 0; i < eigs.size(); ++i) {
    const cdouble x = eigs[i].lambda.value();
    if (paired[i] || x.imag() <= 0.0) continue;
    std::size_t best = eigs.size();
    double best_dist = 0.0;
    for (std::size_t j = 0; j < eigs.size(); ++j) {
      const cdouble y = eigs[j].lambda.value();
      if (paired[j] || y.imag() >= 0.0 || eigs[j].segre != eigs[i].segre) continue;
      const double d = std::abs(y - std::conj(x));
      if (best == eigs.size() || d < best_dist) {
        best = j;
        best_dist = d;
      }
    }
    if (best == eigs.size()) continue;
    const cdouble mid = 0.5 * (x + std::conj(eigs[best].lambda.value()));
    eigs[i].lambda = mid;
    eigs[best].lambda = std::conj(mid);
    paired[i] = paired[best] = true;
  }
}

bool finite_less(const EigStructure& a, const EigStructure& b) {
  const cdouble x = a.lambda.value();
  const cdouble y = b.lambda.value();
  if (x.real() != y.real()) return x.real() < y.real();
  return x.imag() < y.imag();
}

Matrix block_diag(const Matrix& a, const Matrix& b) {
  Matrix out = Matrix::Zero(a.rows() + b.rows(), a.cols() + b.cols());
  out.topLeftCorner(a.rows(), a.cols()) = a;
  out.bottomRightCorner(b.rows(), b.cols()) = b;
  return out;
}

// Staircase chain extraction at `at` for the pencil (E, A).
std::vector<std::vector<Vector>> chains_at(const Matrix& E, const Matrix& A, cdouble at,
                                           const std::vector<int>& tower, double tol_rank) {
  const Eigen::Index n = E.rows();
  const std::vector<int> segre = segre_from_tower(tower);
  const double ref = chain_reference(E, A);
  std::vector<std::vector<Vector>> chains;
  Matrix Q(n, 0);
  const int longest = segre.empty() ? 0 : segre.front();
  for (int m = longest; m >= 1; --m) {
    const int count = static_cast<int>(std::count(segre.begin(), segre.end(), m));
    if (count == 0) continue;
    const Matrix null_m = linalg::structural_null_space(chain_matrix(E, A, at, m), tol_rank, ref);
    Matrix g0 = null_m.topRows(n);
    if (Q.cols() > 0) g0 -= Q * (Q.adjoint() * g0);
    const Matrix V = linalg::right_singular_vectors(g0);
    if (V.cols() < count) {
      throw Error(ErrorCode::kStructureInconsistent, "too few independent chains");
    }
    for (int c = 0; c < count; ++c) {
      const Vector stacked = null_m * V.col(c);
      std::vector<Vector> chain;
      for (int k = 0; k < m; ++k) chain.push_back(stacked.segment(k * n, n));
      chains.push_back(std::move(chain));
    }
    // Refresh the eigenvector basis with the new chain heads.
    Matrix heads(n, Q.cols() + count);
    heads.leftCols(Q.cols()) = Q;
    for (int c = 0; c < count; ++c) {
      heads.col(Q.cols() + c) = chains[chains.size() - count + c].front();
    }
    Eigen::HouseholderQR<Matrix> qr(heads);
    Q = qr.householderQ() * Matrix::Identity(n, heads.cols());
  }
  return chains;
}

}  // namespace

const EigStructure* SpectralData::find(const ExtComplex& z, double tol) const {
  const EigStructure* best = nullptr;
  double best_dist = 0.0;
  for (const auto& e : eigs) {
    if (!near(e.lambda, z, tol)) continue;
    const double d = e.lambda.is_infinite() ? 0.0 : std::abs(e.lambda.value() - z.value());
    if (best == nullptr || d < best_dist) {
      best = &e;
      best_dist = d;
    }
  }
  return best;
}

const EigStructure* SpectralData::infinity() const {
  for (const auto& e : eigs) {
    if (e.lambda.is_infinite()) return &e;
  }
  return nullptr;
}

int SpectralData::m1_infinity() const {
  const EigStructure* inf = infinity();
  return inf ? inf->m1() : 0;
}

double SpectralData::max_finite_modulus() const {
  double out = 0.0;
  for (const auto& e : eigs) {
    if (e.lambda.is_finite()) out = std::max(out, std::abs(e.lambda.value()));
  }
  return out;
}

Matrix WeierstrassForm::E_w() const {
  return block_diag(Matrix::Identity(r, r), N);
}

Matrix WeierstrassForm::A_w() const {
  return block_diag(J, Matrix::Identity(N.rows(), N.cols()));
}

std::vector<int> segre_from_tower(const std::vector<int>& tower) {
  if (!is_monotone_tower(tower)) {
    throw Error(ErrorCode::kStructureInconsistent, "nullity tower increments are not non-increasing");
  }
  // t_k = #blocks of size >= k.
  std::vector<int> t;
  int prev = 0;
  for (int nu : tower) {
    t.push_back(nu - prev);
    prev = nu;
  }
  std::vector<int> segre;
  for (std::size_t k = t.size(); k >= 1; --k) {
    const int next = k < t.size() ? t[k] : 0;
    for (int c = 0; c < t[k - 1] - next; ++c) segre.push_back(static_cast<int>(k));
  }
  return segre;
}

std::vector<int> nullity_tower(const Pencil& p, const ExtComplex& lambda, int k_max,
                               double tol_rank) {
  if (k_max < 1) throw Error(ErrorCode::kInvalidInput, "k_max must be at least 1");
  if (!is_regular(p)) throw Error(ErrorCode::kNotRegular, "nullity tower of a singular pencil");
  const Site site = site_for(p, lambda);
  const double ref = chain_reference(site.E, site.A);
  std::vector<int> out;
  for (int k = 1; k <= k_max; ++k) {
    out.push_back(
        linalg::structural_nullity(chain_matrix(site.E, site.A, site.at, k), tol_rank, ref));
  }
  return out;
}

std::vector<int> stable_tower(const Pencil& p, const ExtComplex& lambda, double tol_rank) {
  const Site site = site_for(p, lambda);
  return tower_until_stable(site.E, site.A, site.at, tol_rank, std::max(p.n(), 1));
}

SpectralData eig_structure(const Pencil& p, const Tolerances& tol) {
  if (!is_regular(p, tol.regular)) {
    throw Error(ErrorCode::kNotRegular, "pencil is singular (det(sE - A) vanishes identically)");
  }
  const int n = p.n();
  SpectralData sd;
  sd.n = n;

  std::vector<int> inf_tower = stable_tower(p, ExtComplex::infinity(), tol.rank);
  const int dim_inf = inf_tower.empty() ? 0 : inf_tower.back();
  const int r = n - dim_inf;

  std::vector<EigStructure> finite;
  if (r > 0) {
    const std::vector<cdouble> raw = shifted_roots(p, r);
    std::vector<int> all(raw.size());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    Resolver resolver(p, raw, tol);
    if (!resolver.resolve(all, 0)) {
      throw Error(ErrorCode::kStructureInconsistent,
                  "no root clustering agrees with the nullity towers; adjust --tol-rank or "
                  "--tol-cluster");
    }
    finite = resolver.take();
    if (p.is_real()) pair_conjugates(finite);
  }
  std::sort(finite.begin(), finite.end(), finite_less);
  sd.eigs = std::move(finite);
  if (dim_inf > 0) sd.eigs.push_back(make_structure(ExtComplex::infinity(), std::move(inf_tower)));

  Polynomial m_A = Polynomial::constant(1.0);
  int total = 0;
  for (const auto& e : sd.eigs) {
    total += e.root_dim;
    sd.M += e.m1();
    if (e.lambda.is_finite()) {
      for (int k = 0; k < e.m1(); ++k) m_A = m_A * Polynomial::linear_factor(e.lambda.value());
    }
  }
  if (p.is_real()) m_A = m_A.real_part();
  sd.m_A = m_A;
  if (total != n) {
    throw Error(ErrorCode::kStructureInconsistent,
                "root subspace dimensions sum to " + std::to_string(total) + ", expected " +
                    std::to_string(n));
  }
  return sd;
}

std::vector<std::vector<Vector>> jordan_chains(const Pencil& p, const ExtComplex& lambda,
                                               const Tolerances& tol) {
  if (!is_regular(p, tol.regular)) throw Error(ErrorCode::kNotRegular, "jordan_chains");
  const Site site = site_for(p, lambda);
  const std::vector<int> tower =
      tower_until_stable(site.E, site.A, site.at, tol.rank, std::max(p.n(), 1));
  if (tower.empty()) {
    throw Error(ErrorCode::kNotEigenvalue, to_string(lambda) + " is not an eigenvalue");
  }
  return chains_at(site.E, site.A, site.at, tower, tol.rank);
}

WeierstrassForm weierstrass(const Pencil& p, bool real_form, const Tolerances& tol) {
  return weierstrass(p, eig_structure(p, tol), real_form, tol);
}

WeierstrassForm weierstrass(const Pencil& p, const SpectralData& sd, bool real_form,
                            const Tolerances& tol) {
  if (real_form && !p.is_real()) {
    throw Error(ErrorCode::kInvalidInput, "real Weierstrass form requested for a complex pencil");
  }
  const int n = p.n();
  WeierstrassForm wf;
  wf.real_form = real_form;
  std::vector<Vector> fin_cols;
  std::vector<Vector> inf_cols;
  std::vector<WeierstrassBlock> inf_blocks;
  std::vector<std::pair<Matrix, int>> j_blocks;  // block and its dimension
  std::vector<int> n_sizes;

  for (const auto& e : sd.eigs) {
    const Site site = site_for(p, e.lambda);
    if (e.lambda.is_finite() && real_form && e.lambda.value().imag() < 0.0) continue;
    const auto chains = chains_at(site.E, site.A, site.at, e.nullity_tower, tol.rank);
    for (const auto& chain : chains) {
      const int m = static_cast<int>(chain.size());
      if (e.lambda.is_infinite()) {
        inf_blocks.push_back({e.lambda, m, static_cast<int>(inf_cols.size()), false});
        for (const Vector& g : chain) inf_cols.push_back(g);
        n_sizes.push_back(m);
        continue;
      }
      const cdouble lam = e.lambda.value();
      const bool pair = real_form && lam.imag() > 0.0;
      WeierstrassBlock blk{e.lambda, m, static_cast<int>(fin_cols.size()), pair};
      wf.blocks.push_back(blk);
      if (pair) {
        Matrix J = Matrix::Zero(2 * m, 2 * m);
        for (int k = 0; k < m; ++k) {
          fin_cols.push_back(chain[static_cast<std::size_t>(k)].real().cast<cdouble>());
          fin_cols.push_back(chain[static_cast<std::size_t>(k)].imag().cast<cdouble>());
          J(2 * k, 2 * k) = lam.real();
          J(2 * k, 2 * k + 1) = lam.imag();
          J(2 * k + 1, 2 * k) = -lam.imag();
          J(2 * k + 1, 2 * k + 1) = lam.real();
          if (k > 0) {
            J(2 * k - 2, 2 * k) = 1.0;
            J(2 * k - 1, 2 * k + 1) = 1.0;
          }
        }
        j_blocks.emplace_back(J, 2 * m);
      } else {
        Matrix J = Matrix::Zero(m, m);
        for (int k = 0; k < m; ++k) {
          fin_cols.push_back(real_form ? Vector(chain[static_cast<std::size_t>(k)].real().cast<cdouble>())
                                       : chain[static_cast<std::size_t>(k)]);
          J(k, k) = lam;
          if (k > 0) J(k - 1, k) = 1.0;
        }
        j_blocks.emplace_back(J, m);
      }
    }
  }

  const int r = static_cast<int>(fin_cols.size());
  if (r + static_cast<int>(inf_cols.size()) != n) {
    throw Error(ErrorCode::kStructureInconsistent, "chains do not span the space");
  }
  wf.r = r;
  wf.T = Matrix(n, n);
  for (int j = 0; j < r; ++j) wf.T.col(j) = fin_cols[static_cast<std::size_t>(j)];
  for (std::size_t j = 0; j < inf_cols.size(); ++j) wf.T.col(r + static_cast<int>(j)) = inf_cols[j];
  for (auto& blk : inf_blocks) {
    blk.offset += r;
    wf.blocks.push_back(blk);
  }

  Matrix W(n, n);
  W.leftCols(r) = p.E() * wf.T.leftCols(r);
  W.rightCols(n - r) = p.A() * wf.T.rightCols(n - r);
  wf.cond = linalg::cond2(W);
  if (!(wf.cond <= kIllConditionedBound)) {
    throw Error(ErrorCode::kIllConditioned,
                "chain basis is ill-conditioned (cond " + std::to_string(wf.cond) + ")");
  }
  wf.S = Eigen::PartialPivLU<Matrix>(W).inverse();
  if (real_form) {
    wf.S = linalg::real_part(wf.S);
    wf.T = linalg::real_part(wf.T);
  }

  wf.J = Matrix::Zero(r, r);
  int at = 0;
  for (const auto& [blk, dim] : j_blocks) {
    wf.J.block(at, at, dim, dim) = blk;
    at += dim;
  }
  wf.N = Matrix::Zero(n - r, n - r);
  at = 0;
  for (int m : n_sizes) {
    for (int k = 1; k < m; ++k) wf.N(at + k - 1, at + k) = 1.0;
    at += m;
  }
  return wf;
}

double weierstrass_residual(const Pencil& p, const WeierstrassForm& wf, cdouble s0) {
  const Matrix lhs = wf.S * evaluate(p, s0) * wf.T;
  const Matrix rhs = s0 * wf.E_w() - wf.A_w();
  return (lhs - rhs).norm();
}

}  // namespace rankone
