#include "rankone/poly.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

#include "rankone/errors.hpp"

namespace rankone {

Polynomial::Polynomial(std::vector<cdouble> coeffs) : coeffs_(std::move(coeffs)) {}

Polynomial Polynomial::constant(cdouble c) { return Polynomial({c}); }

Polynomial Polynomial::monomial(int k, cdouble c) {
  std::vector<cdouble> coeffs(static_cast<std::size_t>(k) + 1, 0.0);
  coeffs.back() = c;
  return Polynomial(std::move(coeffs));
}

Polynomial Polynomial::linear_factor(cdouble root) { return Polynomial({-root, 1.0}); }

cdouble Polynomial::coeff(int k) const {
  if (k < 0 || k >= static_cast<int>(coeffs_.size())) return 0.0;
  return coeffs_[static_cast<std::size_t>(k)];
}

int Polynomial::degree() const {
  for (int k = static_cast<int>(coeffs_.size()) - 1; k >= 0; --k) {
    if (coeffs_[static_cast<std::size_t>(k)] != 0.0) return k;
  }
  return -1;
}

cdouble Polynomial::leading() const {
  const int d = degree();
  return d < 0 ? cdouble(0.0) : coeffs_[static_cast<std::size_t>(d)];
}

cdouble Polynomial::operator()(cdouble s) const {
  cdouble acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * s + *it;
  return acc;
}

double Polynomial::norm_inf() const {
  double m = 0.0;
  for (cdouble c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial Polynomial::trimmed(double rel_tol, double scale) const {
  double biggest = 0.0;
  double power = 1.0;
  std::vector<double> weighted(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    weighted[k] = std::abs(coeffs_[k]) * power;
    biggest = std::max(biggest, weighted[k]);
    power *= scale;
  }
  std::size_t keep = coeffs_.size();
  while (keep > 0 && weighted[keep - 1] <= rel_tol * biggest) --keep;
  return Polynomial(std::vector<cdouble>(coeffs_.begin(), coeffs_.begin() + keep));
}

Polynomial Polynomial::resized(int count) const {
  std::vector<cdouble> out(static_cast<std::size_t>(std::max(count, 0)), 0.0);
  for (std::size_t k = 0; k < out.size() && k < coeffs_.size(); ++k) out[k] = coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return Polynomial();
  std::vector<cdouble> out(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) out[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial Polynomial::real_part() const {
  std::vector<cdouble> out(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) out[k] = coeffs_[k].real();
  return Polynomial(std::move(out));
}

bool Polynomial::is_real(double tol) const {
  const double scale = std::max(1.0, norm_inf());
  return std::all_of(coeffs_.begin(), coeffs_.end(),
                     [&](cdouble c) { return std::abs(c.imag()) <= tol * scale; });
}

LinearDivision Polynomial::divide_linear(cdouble root) const {
  const int d = degree();
  if (d <= 0) return {Polynomial(), d < 0 ? cdouble(0.0) : coeffs_[0]};
  std::vector<cdouble> q(static_cast<std::size_t>(d));
  cdouble carry = 0.0;
  for (int k = d; k >= 1; --k) {
    carry = carry * root + coeffs_[static_cast<std::size_t>(k)];
    q[static_cast<std::size_t>(k - 1)] = carry;
  }
  const cdouble remainder = carry * root + coeffs_[0];
  return {Polynomial(std::move(q)), remainder};
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<cdouble> out(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) out[k] += a.coeffs_[k];
  for (std::size_t k = 0; k < b.coeffs_.size(); ++k) out[k] += b.coeffs_[k];
  return Polynomial(std::move(out));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  return a + cdouble(-1.0) * b;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.coeffs_.empty() || b.coeffs_.empty()) return Polynomial();
  std::vector<cdouble> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(out));
}

Polynomial operator*(cdouble c, const Polynomial& p) {
  std::vector<cdouble> out(p.coeffs_);
  for (cdouble& x : out) x *= c;
  return Polynomial(std::move(out));
}

int RootMultiset::total() const {
  int sum = 0;
  for (const auto& [root, mult] : roots) sum += mult;
  return sum;
}

Polynomial interpolate(std::span<const cdouble> nodes, std::span<const cdouble> values) {
  if (nodes.size() != values.size()) {
    throw Error(ErrorCode::kInvalidInput, "interpolate: nodes and values differ in length");
  }
  const std::size_t n = nodes.size();
  if (n == 0) return Polynomial();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double scale = std::max({1.0, std::abs(nodes[i]), std::abs(nodes[j])});
      if (std::abs(nodes[i] - nodes[j]) <= 64.0 * 2.220446049250313e-16 * scale) {
        throw Error(ErrorCode::kDuplicateNodes,
                    "nodes " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
      }
    }
  }
  // Divided differences in place.
  std::vector<cdouble> dd(values.begin(), values.end());
  for (std::size_t level = 1; level < n; ++level) {
    for (std::size_t i = n - 1; i >= level; --i) {
      dd[i] = (dd[i] - dd[i - 1]) / (nodes[i] - nodes[i - level]);
    }
  }
  // Horner expansion of the Newton form.
  Polynomial acc = Polynomial::constant(dd[n - 1]);
  for (std::size_t i = n - 1; i-- > 0;) {
    acc = acc * Polynomial::linear_factor(nodes[i]) + Polynomial::constant(dd[i]);
  }
  return acc.resized(static_cast<int>(n));
}

std::vector<cdouble> circle_nodes(int count, double radius, double phase) {
  std::vector<cdouble> nodes(static_cast<std::size_t>(std::max(count, 0)));
  for (int j = 0; j < count; ++j) {
    const double angle = phase + 2.0 * std::numbers::pi * j / count;
    nodes[static_cast<std::size_t>(j)] = std::polar(radius, angle);
  }
  return nodes;
}

Polynomial interpolate_on_circle(std::span<const cdouble> values, double radius, double phase) {
  const int n = static_cast<int>(values.size());
  std::vector<cdouble> coeffs(values.size(), 0.0);
  for (int k = 0; k < n; ++k) {
    cdouble acc = 0.0;
    for (int j = 0; j < n; ++j) {
      // Reduce the angle index modulo n to keep the twiddle factors exact-ish.
      const int idx = static_cast<int>((static_cast<long long>(j) * k) % n);
      acc += values[static_cast<std::size_t>(j)] *
             std::polar(1.0, -2.0 * std::numbers::pi * idx / n);
    }
    acc /= static_cast<double>(n);
    coeffs[static_cast<std::size_t>(k)] = acc / std::polar(std::pow(radius, k), k * phase);
  }
  return Polynomial(std::move(coeffs));
}

Matrix interpolate_vectors_on_circle(const std::vector<Vector>& values, double radius,
                                     double phase) {
  const int count = static_cast<int>(values.size());
  if (count == 0) return Matrix(0, 0);
  const Eigen::Index dim = values.front().size();
  Matrix out = Matrix::Zero(count, dim);
  for (int k = 0; k < count; ++k) {
    for (int j = 0; j < count; ++j) {
      const int idx = static_cast<int>((static_cast<long long>(j) * k) % count);
      out.row(k) += std::polar(1.0, -2.0 * std::numbers::pi * idx / count) *
                    values[static_cast<std::size_t>(j)].transpose();
    }
    out.row(k) /= static_cast<double>(count) * std::polar(std::pow(radius, k), k * phase);
  }
  return out;
}

std::vector<cdouble> polynomial_roots(const Polynomial& p) {
  const int d = p.degree();
  if (d < 0) throw Error(ErrorCode::kZeroPolynomial, "roots of the zero polynomial");
  if (d == 0) return {};
  const cdouble lead = p.coeff(d);
  // Rescale s = sigma * t so that the roots of the scaled polynomial have
  // geometric-mean magnitude near one.
  double sigma = 1.0;
  {
    const double c0 = std::abs(p.coeff(0));
    if (c0 > 0.0) sigma = std::pow(c0 / std::abs(lead), 1.0 / d);
    if (!(sigma > 0.0) || !std::isfinite(sigma)) sigma = 1.0;
    sigma = std::exp2(std::round(std::log2(sigma)));
  }
  Matrix companion = Matrix::Zero(d, d);
  for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
  for (int k = 0; k < d; ++k) {
    companion(k, d - 1) = -p.coeff(k) / lead / std::pow(sigma, d - k);
  }
  Eigen::ComplexEigenSolver<Matrix> solver(companion, false);
  std::vector<cdouble> out(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) out[static_cast<std::size_t>(k)] = sigma * solver.eigenvalues()(k);
  return out;
}

std::vector<std::vector<int>> cluster_roots(std::span<const cdouble> roots, double cluster_tol,
                                            double noise) {
  const int count = static_cast<int>(roots.size());
  auto at = [&](int i) { return roots[static_cast<std::size_t>(i)]; };
  auto allowed = [&](std::size_t m, cdouble center) {
    double rel = cluster_tol;
    if (m > 1) rel = std::max(rel, 10.0 * std::pow(noise, 1.0 / static_cast<double>(m)));
    return rel * std::max(1.0, std::abs(center));
  };
  auto mean = [&](const std::vector<int>& members) {
    cdouble sum = 0.0;
    for (int idx : members) sum += at(idx);
    return sum / static_cast<double>(members.size());
  };

  // Roots within cluster_tol of each other always share a group.
  std::vector<int> parent(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) parent[static_cast<std::size_t>(i)] = i;
  auto find = [&](int i) {
    while (parent[static_cast<std::size_t>(i)] != i) i = parent[static_cast<std::size_t>(i)];
    return i;
  };
  for (int i = 0; i < count; ++i) {
    for (int j = i + 1; j < count; ++j) {
      const double tight = cluster_tol * std::max(1.0, std::abs(0.5 * (at(i) + at(j))));
      if (std::abs(at(i) - at(j)) <= tight) parent[static_cast<std::size_t>(find(j))] = find(i);
    }
  }
  std::vector<std::vector<int>> groups;
  {
    std::vector<int> slot(static_cast<std::size_t>(count), -1);
    for (int i = 0; i < count; ++i) {
      int& g = slot[static_cast<std::size_t>(find(i))];
      if (g < 0) {
        g = static_cast<int>(groups.size());
        groups.emplace_back();
      }
      groups[static_cast<std::size_t>(g)].push_back(i);
    }
  }

  // Grow clusters around each group by absorbing the nearest groups. An
  // m-fold root splits into a cloud whose pairs may be wider than a
  // double root allows, so the largest admissible cluster is taken first.
  for (;;) {
    std::vector<std::size_t> best;
    std::size_t best_m = 0;
    double best_score = 2.0;
    for (std::size_t a = 0; a < groups.size(); ++a) {
      const cdouble ca = mean(groups[a]);
      std::vector<std::size_t> order;
      for (std::size_t b = 0; b < groups.size(); ++b)
        if (b != a) order.push_back(b);
      std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return std::abs(mean(groups[x]) - ca) < std::abs(mean(groups[y]) - ca);
      });
      std::vector<int> members = groups[a];
      std::vector<std::size_t> picked{a};
      for (std::size_t b : order) {
        members.insert(members.end(), groups[b].begin(), groups[b].end());
        picked.push_back(b);
        const cdouble center = mean(members);
        double radius = 0.0;
        for (int idx : members) radius = std::max(radius, std::abs(at(idx) - center));
        const double score = radius / allowed(members.size(), center);
        if (score > 1.0) continue;
        // A split m-fold root spreads around its centre; tight sub-clouds
        // mean several separate multiple roots are being lumped together.
        if (members.size() >= 3) {
          const double tight = cluster_tol * std::max(1.0, std::abs(center));
          double gap = std::numeric_limits<double>::infinity();
          for (std::size_t x = 0; x < members.size(); ++x)
            for (std::size_t y = x + 1; y < members.size(); ++y) {
              const double d = std::abs(at(members[x]) - at(members[y]));
              if (d > tight) gap = std::min(gap, d);
            }
          if (gap < 0.2 * radius) continue;
        }
        if (members.size() > best_m || (members.size() == best_m && score < best_score)) {
          best = picked;
          best_m = members.size();
          best_score = score;
        }
      }
    }
    if (best.empty()) break;
    std::vector<int> merged;
    for (std::size_t g : best) merged.insert(merged.end(), groups[g].begin(), groups[g].end());
    std::sort(best.begin(), best.end());
    for (auto it = best.rbegin(); it != best.rend(); ++it)
      groups.erase(groups.begin() + static_cast<std::ptrdiff_t>(*it));
    groups.push_back(std::move(merged));
  }

  for (auto& g : groups) std::sort(g.begin(), g.end());
  return groups;
}

RootMultiset roots_with_multiplicity(const Polynomial& p, double cluster_tol, double noise) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroPolynomial, "roots of the zero polynomial");
  const std::vector<cdouble> raw = polynomial_roots(p);
  RootMultiset out;
  out.cluster_tol = cluster_tol;
  for (const auto& group : cluster_roots(raw, cluster_tol, noise)) {
    cdouble sum = 0.0;
    for (int idx : group) sum += raw[static_cast<std::size_t>(idx)];
    out.roots.emplace_back(sum / static_cast<double>(group.size()), static_cast<int>(group.size()));
  }
  std::sort(out.roots.begin(), out.roots.end(), [](const auto& a, const auto& b) {
    if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
    return a.first.imag() < b.first.imag();
  });
  return out;
}

Polynomial poly_from_roots(const RootMultiset& roots, cdouble leading) {
  Polynomial acc = Polynomial::constant(leading);
  for (const auto& [root, mult] : roots.roots) {
    for (int k = 0; k < mult; ++k) acc = acc * Polynomial::linear_factor(root);
  }
  return acc;
}

}  // namespace rankone
