#include "rankone/bounds.hpp"

#include <algorithm>

#include "rankone/errors.hpp"

namespace rankone {

namespace {

// nu_k from a stable tower: constant at root_dim beyond its end; 0 for an
// eigenvalue that is absent (null entry).
int nu(const EigStructure* e, int k) {
  if (e == nullptr || k <= 0) return 0;
  const auto& t = e->nullity_tower;
  if (static_cast<std::size_t>(k) <= t.size()) return t[static_cast<std::size_t>(k - 1)];
  return e->root_dim;
}

struct Site {
  ExtComplex lambda;
  const EigStructure* before = nullptr;
  const EigStructure* after = nullptr;
};

// sigma(A) u sigma(A+P), each point paired with its structure on both sides.
std::vector<Site> union_of_spectra(const SpectralData& before, const SpectralData& after,
                                   double tol) {
  std::vector<Site> out;
  std::vector<const EigStructure*> used;
  for (const auto& e : before.eigs) {
    const EigStructure* f = after.find(e.lambda, tol);
    out.push_back({e.lambda, &e, f});
    if (f != nullptr) used.push_back(f);
  }
  for (const auto& f : after.eigs) {
    if (std::find(used.begin(), used.end(), &f) == used.end()) out.push_back({f.lambda, nullptr, &f});
  }
  return out;
}

BoundRecord record(const char* check, int value, int lower, int upper) {
  BoundRecord r;
  r.check = check;
  r.value = value;
  r.lower = lower;
  r.upper = upper;
  r.slack = std::min(value - lower, upper - value);
  r.satisfied = r.slack >= 0;
  return r;
}

void require_same_size(const SpectralData& before, const SpectralData& after) {
  if (before.n != after.n) {
    throw Error(ErrorCode::kInvalidInput, "spectral data of different dimensions");
  }
}

}  // namespace

bool BoundsReport::overall_pass() const {
  return std::all_of(records.begin(), records.end(), [](const BoundRecord& r) { return r.satisfied; });
}

void BoundsReport::append(const BoundsReport& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

BoundsReport check_layer_bounds(const SpectralData& before, const SpectralData& after,
                                double match_tol) {
  require_same_size(before, after);
  BoundsReport out;
  for (const Site& site : union_of_spectra(before, after, match_tol)) {
    const int longest = std::max(site.before ? site.before->m1() : 0, site.after ? site.after->m1() : 0);
    const int k_max = std::max(1, std::min(before.n, longest + 1));
    for (int k = 1; k <= k_max; ++k) {
      const int layer_a = nu(site.before, k + 1) - nu(site.before, k);
      const int layer_b = nu(site.after, k + 1) - nu(site.after, k);
      BoundRecord layer = record(checks::kLayer, layer_b - layer_a, -1, 1);
      layer.lambda = site.lambda;
      layer.k = k;
      layer.before = layer_a;
      layer.after = layer_b;
      out.records.push_back(layer);

      const int dim_a = nu(site.before, k);
      const int dim_b = nu(site.after, k);
      BoundRecord trunc = record(checks::kTruncation, dim_b - dim_a, -k, k);
      trunc.lambda = site.lambda;
      trunc.k = k;
      trunc.before = dim_a;
      trunc.after = dim_b;
      out.records.push_back(trunc);
    }
  }
  return out;
}

BoundsReport check_persistence(const SpectralData& before, const SpectralData& after,
                               double match_tol) {
  require_same_size(before, after);
  BoundsReport out;
  for (const Site& site : union_of_spectra(before, after, match_tol)) {
    const int geo_after = site.after ? site.after->geometric() : 0;
    if (site.before != nullptr && site.before->geometric() >= 2) {
      // Survives: dim L_lambda(A+P) >= 1.
      const int dim = site.after ? site.after->root_dim : 0;
      BoundRecord r = record(checks::kPersistence, dim, 1, before.n);
      r.lambda = site.lambda;
      r.before = site.before->root_dim;
      r.after = dim;
      out.records.push_back(r);
    }
    if (site.before == nullptr) {
      BoundRecord r = record(checks::kNewGeometric, geo_after, 1, 1);
      r.lambda = site.lambda;
      r.before = 0;
      r.after = geo_after;
      out.records.push_back(r);
    }
  }
  return out;
}

BoundsReport check_root_dim_bounds(const SpectralData& before, const SpectralData& after,
                                   double match_tol) {
  require_same_size(before, after);
  BoundsReport out;
  const int M = before.M;
  int sum_old = 0;
  int sum_new = 0;
  for (const Site& site : union_of_spectra(before, after, match_tol)) {
    const int dim_a = site.before ? site.before->root_dim : 0;
    const int dim_b = site.after ? site.after->root_dim : 0;
    BoundRecord r;
    if (site.before != nullptr) {
      const int m1 = site.before->m1();
      r = record(checks::kRootDim, dim_b, dim_a - m1, dim_a + M - m1);
      sum_old += dim_b;
    } else {
      r = record(checks::kNewRootDim, dim_b, 0, M);
      sum_new += dim_b;
    }
    r.lambda = site.lambda;
    r.before = dim_a;
    r.after = dim_b;
    out.records.push_back(r);
  }
  BoundRecord old_total = record(checks::kSumOld, sum_old, before.n - M, before.n);
  old_total.has_lambda = false;
  old_total.before = before.n;
  old_total.after = sum_old;
  out.records.push_back(old_total);
  BoundRecord new_total = record(checks::kSumNew, sum_new, 0, M);
  new_total.has_lambda = false;
  new_total.after = sum_new;
  out.records.push_back(new_total);
  return out;
}

BoundsReport check_all_bounds(const SpectralData& before, const SpectralData& after,
                              double match_tol) {
  BoundsReport out = check_layer_bounds(before, after, match_tol);
  out.append(check_persistence(before, after, match_tol));
  out.append(check_root_dim_bounds(before, after, match_tol));
  return out;
}

namespace {

struct Pair {
  SpectralData before;
  SpectralData after;
};

Pair analyze_pair(const Pencil& a, const RankOnePencil& p, const Tolerances& tol) {
  // eig_structure throws NotRegular for either pencil.
  return {eig_structure(a, tol), eig_structure(perturb(a, p), tol)};
}

}  // namespace

BoundsReport check_layer_bounds(const Pencil& a, const RankOnePencil& p, const Tolerances& tol) {
  const Pair pair = analyze_pair(a, p, tol);
  return check_layer_bounds(pair.before, pair.after, tol.match);
}

BoundsReport check_persistence(const Pencil& a, const RankOnePencil& p, const Tolerances& tol) {
  const Pair pair = analyze_pair(a, p, tol);
  return check_persistence(pair.before, pair.after, tol.match);
}

BoundsReport check_root_dim_bounds(const Pencil& a, const RankOnePencil& p,
                                   const Tolerances& tol) {
  const Pair pair = analyze_pair(a, p, tol);
  return check_root_dim_bounds(pair.before, pair.after, tol.match);
}

BoundsReport check_all_bounds(const Pencil& a, const RankOnePencil& p, const Tolerances& tol) {
  const Pair pair = analyze_pair(a, p, tol);
  return check_all_bounds(pair.before, pair.after, tol.match);
}

}  // namespace rankone
