#pragma once

// Hand-rolled generators for the randomized property suites.

#include <random>

#include "scatlab/lattice.hpp"
#include "scatlab/series.hpp"

namespace gen {

using namespace scat;

inline TruncatedSeries random_series(std::mt19937_64& rng, std::size_t nvars, int order, bool unit) {
  std::uniform_int_distribution<int> coef(-3, 3), ex(0, 3), count(0, 5);
  TruncatedSeries s(nvars, order);
  if (unit) s.add_term(Exponent(nvars, 0), Rat(1 + std::abs(coef(rng))));
  int terms = count(rng);
  for (int t = 0; t < terms; ++t) {
    Exponent e(nvars);
    for (auto& x : e) x = ex(rng);
    s.add_term(e, Rat(coef(rng)) / (1 + std::abs(coef(rng))));
  }
  return s;
}

/// D^{-1} S with S skew-symmetric and entries divisible as needed.
inline IntMatrix random_skew_symmetrizable(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> entry(-2, 2), dist_d(1, 3);
  IVec d(n);
  for (auto& x : d) x = dist_d(rng);
  IntMatrix b(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      // d_i b_ij = s, d_j b_ji = -s with s a multiple of lcm(d_i, d_j)
      std::int64_t s = entry(rng) * lcm(d[i], d[j]);
      b(i, j) = s / d[i];
      b(j, i) = -s / d[j];
    }
  return b;
}

}  // namespace gen
