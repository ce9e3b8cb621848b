#pragma once

// Matrices whose columns extend to all of Z by the sign-twisted rule
// col(j + n) = (-1)^e col(j). Column indices in this API are 1-based.

#include <cstddef>
#include <vector>

#include "twistlab/matrix.hpp"
#include "twistlab/subsets.hpp"

namespace twistlab {

template <class T>
struct Cyclic {
  Matrix<T> m;
  int e = 0;  // sign exponent

  Cyclic() = default;
  Cyclic(Matrix<T> mat, int sign_exponent) : m(std::move(mat)), e(sign_exponent) {}

  std::size_t rows() const { return m.rows(); }
  int n() const { return static_cast<int>(m.cols()); }

  // Entry (i, j) with 0-based row i and arbitrary integer column j.
  T at(std::size_t i, long j) const {
    const int nn = n();
    int j0 = mod1(j, nn);
    long q = (j - j0) / nn;
    const T& x = m(i, static_cast<std::size_t>(j0 - 1));
    return ((e * q) % 2 == 0) ? x : -x;
  }

  std::vector<T> column(long j) const {
    std::vector<T> c(rows());
    for (std::size_t i = 0; i < rows(); ++i) c[i] = at(i, j);
    return c;
  }

  // Submatrix on the given (arbitrary integer) columns, all rows.
  Matrix<T> columns(const std::vector<long>& cols) const {
    Matrix<T> s(rows(), cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t i = 0; i < rows(); ++i) s(i, c) = at(i, cols[c]);
    return s;
  }

  Matrix<T> window(long a, long b) const {
    std::vector<long> cols;
    for (long j = a; j < b; ++j) cols.push_back(j);
    return columns(cols);
  }

  // Maximal minor on arbitrary integer columns, in the order given.
  T minor(const std::vector<long>& cols) const { return det(columns(cols)); }

  // Minor on chosen rows (0-based) and integer columns.
  T minor(const std::vector<std::size_t>& rs, const std::vector<long>& cols) const {
    Matrix<T> s(rs.size(), cols.size());
    for (std::size_t r = 0; r < rs.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) s(r, c) = at(rs[r], cols[c]);
    return det(s);
  }

  // Plücker coordinate for a subset of [n] (sorted columns, no sign twist).
  T plucker(Subset s) const {
    std::vector<long> cols;
    for (int x : elements(s)) cols.push_back(x);
    return minor(cols);
  }

  // Minor on the circular interval [a, b) with the cyclic sign rule applied.
  T interval_minor(long a, long b) const {
    std::vector<long> cols;
    for (long j = a; j < b; ++j) cols.push_back(j);
    return minor(cols);
  }
};

using CyclicMatrix = Cyclic<Q>;
using CyclicJetMatrix = Cyclic<Jet>;

// Rank of the column block [a, b) of the extended matrix.
inline std::size_t rank_range(const CyclicMatrix& m, long a, long b) {
  if (a >= b) return 0;
  return rank(m.window(a, b));
}

// Ranks of the windows [a, a+t) for t = 0..count, by adding one column at a
// time to an echelon basis.
inline std::vector<std::size_t> prefix_ranks(const CyclicMatrix& m, long a, long count) {
  const std::size_t r = m.rows();
  std::vector<std::vector<Q>> basis;
  std::vector<std::size_t> pivots;
  std::vector<std::size_t> out{0};
  for (long t = 0; t < count; ++t) {
    std::vector<Q> v = m.column(a + t);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const Q& c = v[pivots[b]];
      if (c == 0) continue;
      Q f = c;  // basis vectors are normalized at their pivot
      for (std::size_t i = 0; i < r; ++i)
        if (basis[b][i] != 0) v[i] -= f * basis[b][i];
    }
    std::size_t p = 0;
    while (p < r && v[p] == 0) ++p;
    if (p < r && basis.size() < r) {
      Q inv = 1 / v[p];
      for (auto& x : v) x *= inv;
      basis.push_back(std::move(v));
      pivots.push_back(p);
    }
    out.push_back(basis.size());
  }
  return out;
}

template <class T>
Cyclic<T> stack(const Cyclic<T>& top, const Cyclic<T>& bottom) {
  return Cyclic<T>(vstack(top.m, bottom.m), top.e);
}

// Rows [r0, r0 + count) as a cyclic matrix with the given exponent.
template <class T>
Cyclic<T> row_block(const Cyclic<T>& x, std::size_t r0, std::size_t count, int e) {
  std::vector<std::size_t> rs, cs;
  for (std::size_t i = 0; i < count; ++i) rs.push_back(r0 + i);
  for (std::size_t j = 0; j < x.m.cols(); ++j) cs.push_back(j);
  return Cyclic<T>(x.m.submatrix(rs, cs), e);
}

}  // namespace twistlab
