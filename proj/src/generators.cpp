#include "rankone/generators.hpp"

#include <algorithm>

namespace rankone::gen {

namespace {

// Random composition of `total` into positive parts.
std::vector<int> random_parts(Rng& rng, int total) {
  std::vector<int> parts;
  while (total > 0) {
    std::uniform_int_distribution<int> d(1, total);
    const int k = std::min(d(rng), d(rng));  // favour small parts
    parts.push_back(k);
    total -= k;
  }
  return parts;
}

cdouble gaussian_integer(Rng& rng, int range, bool real_only) {
  std::uniform_int_distribution<int> d(-range, range);
  const double re = d(rng);
  return real_only ? cdouble(re, 0.0) : cdouble(re, d(rng));
}

bool contains(const std::vector<Target>& ts, const ExtComplex& z) {
  return std::any_of(ts.begin(), ts.end(), [&](const Target& t) { return t.value == z; });
}

}  // namespace

Matrix integer_matrix(Rng& rng, int rows, int cols, int lo, int hi, double zero_prob) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::bernoulli_distribution zero(zero_prob);
  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const int x = d(rng);
      m(i, j) = zero(rng) ? 0.0 : static_cast<double>(x);
    }
  }
  return m;
}

Vector integer_vector(Rng& rng, int n, int lo, int hi, double zero_prob) {
  return integer_matrix(rng, n, 1, lo, hi, zero_prob).col(0);
}

Pencil integer_pencil(Rng& rng, int n, int lo, int hi, double zero_prob) {
  for (;;) {
    Pencil p(integer_matrix(rng, n, n, lo, hi, zero_prob),
             integer_matrix(rng, n, n, lo, hi, zero_prob));
    if (is_regular(p)) return p;
  }
}

RankOnePencil integer_rank_one(Rng& rng, int n, int lo, int hi) {
  std::uniform_int_distribution<int> form(0, 2);
  auto nonzero = [&] {
    for (;;) {
      Vector x = integer_vector(rng, n, lo, hi, 0.3);
      if (x.norm() > 0.0) return x;
    }
  };
  switch (form(rng)) {
    case 0:
      return RankOnePencil::left(integer_vector(rng, n, lo, hi, 0.3), nonzero(), nonzero());
    case 1:
      return RankOnePencil::right(integer_vector(rng, n, lo, hi, 0.3), nonzero(), nonzero());
    default: {
      std::uniform_int_distribution<int> d(lo, hi);
      double alpha = d(rng);
      const double beta = d(rng);
      if (alpha == 0.0 && beta == 0.0) alpha = 1.0;
      return RankOnePencil::degenerate(alpha, beta, nonzero(), nonzero());
    }
  }
}

PlacementSpec random_targets(Rng& rng, int budget, double inf_prob, int range, bool real_values) {
  PlacementSpec spec;
  std::bernoulli_distribution use_inf(inf_prob);
  std::vector<int> parts = random_parts(rng, budget);
  bool inf_used = false;
  for (int part : parts) {
    ExtComplex value;
    if (!inf_used && use_inf(rng)) {
      value = ExtComplex::infinity();
      inf_used = true;
    } else {
      do {
        value = gaussian_integer(rng, range, real_values);
      } while (contains(spec.targets, value));
    }
    spec.targets.push_back({value, part});
  }
  spec.budget = budget;
  return spec;
}

PlacementSpec symmetric_targets(Rng& rng, int budget, int range) {
  PlacementSpec spec;
  std::bernoulli_distribution pair(0.5);
  std::uniform_int_distribution<int> d(-range, range);
  std::uniform_int_distribution<int> im(1, range);
  int left = budget;
  while (left > 0) {
    std::uniform_int_distribution<int> md(1, std::max(1, left / 2));
    if (left >= 2 && pair(rng)) {
      const int m = md(rng);
      cdouble z;
      do {
        z = cdouble(d(rng), im(rng));
      } while (contains(spec.targets, z));
      spec.targets.push_back({z, m});
      spec.targets.push_back({std::conj(z), m});
      left -= 2 * m;
    } else {
      std::uniform_int_distribution<int> mr(1, left);
      const int m = std::min(mr(rng), mr(rng));
      cdouble z;
      do {
        z = cdouble(d(rng), 0.0);
      } while (contains(spec.targets, z));
      spec.targets.push_back({z, m});
      left -= m;
    }
  }
  spec.budget = budget;
  return spec;
}

std::vector<Target> random_multiset(Rng& rng, int n, double inf_prob, int range) {
  return random_targets(rng, n, inf_prob, range).targets;
}

}  // namespace rankone::gen
