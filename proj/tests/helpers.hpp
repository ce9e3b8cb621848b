#pragma once

#include "twistlab/positroid.hpp"
#include "twistlab/rng.hpp"
#include "twistlab/twist.hpp"

namespace testutil {
using namespace twistlab;

inline std::vector<Q> positive_params(Rng& rng, int d) {
  std::vector<Q> p(d);
  for (auto& x : p) x = rng.positive_rational();
  return p;
}

// Random point of the positroid cell f (Le-network chart).
inline CyclicMatrix random_in_cell(Rng& rng, const AffinePermutation& f, int k) {
  return parametrize_cell(f, k, positive_params(rng, cell_dimension(f, k)));
}

// Random W with alt(W) totally positive, exponent k-1.
inline CyclicMatrix random_dual_positive(Rng& rng, int l, int n, int k) {
  auto x = random_in_cell(rng, AffinePermutation::identity(n), l);
  auto w = alt(x);
  return CyclicMatrix(w.m, k - 1);
}

inline QMatrix random_matrix(Rng& rng, std::size_t r, std::size_t c, long range = 5) {
  QMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = Q(rng.uniform(-range, range));
  return m;
}

inline CyclicMatrix random_generic(Rng& rng, int k, int l, int n) {
  while (true) {
    CyclicMatrix u(random_matrix(rng, k + l, n), k - 1);
    if (is_circular_generic(u, k, l)) return u;
  }
}

// The quadrilateral chart: W = (-s, 1, -p, q) spans ker Z.
inline CyclicMatrix quad_z(const Q& s, const Q& p, const Q& q) {
  QMatrix z(3, 4);
  z(0, 0) = 1, z(0, 1) = s;
  z(1, 1) = p, z(1, 2) = 1;
  z(2, 1) = -q, z(2, 3) = 1;
  return CyclicMatrix(z, 2);
}
inline AffinePermutation P(const char* s) { return AffinePermutation::parse(s); }
inline Subset S(std::initializer_list<int> xs) { return make_subset(xs); }
}  // namespace testutil
