#pragma once

#include <map>
#include <optional>
#include <vector>

#include "twistlab/cyclic.hpp"
#include "twistlab/subsets.hpp"

namespace twistlab {

// All maximal minors of a full-rank k x n matrix, indexed by k-subsets in
// lexicographic order. Meaningful only up to a global nonzero scalar.
struct PluckerVector {
  int k = 0, n = 0;
  std::vector<Subset> sets;
  std::vector<Q> coords;
  std::vector<int> pos;  // subset bitmask -> index into sets, -1 if not a k-subset

  const Q& operator[](Subset s) const;
  // Divide by the first nonzero coordinate (lexicographic order).
  PluckerVector normalized() const;
  std::vector<Subset> support_sets() const;
};

struct RankDeficient : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PluckerVector plucker(const QMatrix& m);
inline PluckerVector plucker(const CyclicMatrix& m) { return plucker(m.m); }

bool projective_equal(const PluckerVector& p, const PluckerVector& q);

// Row spans equal (same dimensions, same Plücker point).
bool same_row_span(const QMatrix& a, const QMatrix& b);

// Three-term relation Δ_{Sac}Δ_{Sbd} = Δ_{Sab}Δ_{Scd} + Δ_{Sad}Δ_{Sbc} for
// a < b < c < d outside the (k-2)-set S; returns the residual.
Q three_term_residual(const PluckerVector& p, Subset s, int a, int b, int c, int d);

}  // namespace twistlab
