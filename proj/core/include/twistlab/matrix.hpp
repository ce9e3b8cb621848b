#pragma once

// Dense row-major matrices over an exact scalar (Q or Jet) with the
// elimination routines the rest of the library is built on.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistlab/jet.hpp"
#include "twistlab/rational.hpp"

namespace twistlab {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    r_ = rows.size();
    c_ = r_ ? rows.begin()->size() : 0;
    a_.reserve(r_ * c_);
    for (const auto& row : rows) {
      if (row.size() != c_) throw std::invalid_argument("ragged matrix literal");
      for (const auto& x : row) a_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + i * c_, a_.begin() + (i + 1) * c_);
  }
  std::vector<T> col(std::size_t j) const {
    std::vector<T> v(r_);
    for (std::size_t i = 0; i < r_; ++i) v[i] = (*this)(i, j);
    return v;
  }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    Matrix s(rs.size(), cs.size());
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = 0; j < cs.size(); ++j) s(i, j) = (*this)(rs[i], cs[j]);
    return s;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix p(a.r_, b.c_);
    for (std::size_t i = 0; i < a.r_; ++i)
      for (std::size_t l = 0; l < a.c_; ++l) {
        // Jets with a zero value may still carry derivatives.
        if constexpr (!std::is_same_v<T, Jet>) {
          if (a(i, l) == 0) continue;
        }
        for (std::size_t j = 0; j < b.c_; ++j) p(i, j) += a(i, l) * b(l, j);
      }
    return p;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix sum: shape mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    if (a.r_ != b.r_ || a.c_ != b.c_) throw std::invalid_argument("matrix difference: shape mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

 private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<T> a_;
};

using QMatrix = Matrix<Q>;
using JetMatrix = Matrix<Jet>;

inline QMatrix values(const JetMatrix& m) {
  QMatrix v(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v(i, j) = m(i, j).v;
  return v;
}

inline JetMatrix lift(const QMatrix& m) {
  JetMatrix j(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) j(r, c) = Jet(m(r, c));
  return j;
}

inline QMatrix from_ints(std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size(), c = r ? rows.begin()->size() : 0;
  QMatrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw std::invalid_argument("ragged matrix literal");
    std::size_t j = 0;
    for (long x : row) m(i, j++) = Q(x);
    ++i;
  }
  return m;
}

// Determinant by Gaussian elimination; pivots on the first entry whose value
// is nonzero. Works over any exact field-like scalar (Q, Jet).
template <class T>
T det_gauss(Matrix<T> m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det: matrix not square");
  T d(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && value_of(m(p, k)) == 0) ++p;
    if (p == n) return T(0);
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(m(p, j), m(k, j));
      d = -d;
    }
    d *= m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (value_of(m(i, k)) == 0 && !std::is_same_v<T, Jet>) continue;
      T f = m(i, k) / m(k, k);
      for (std::size_t j = k; j < n; ++j) m(i, j) -= f * m(k, j);
    }
  }
  return d;
}

// Fraction-free (Bareiss) determinant: clear row denominators, eliminate over
// the integers with exact divisions, rescale once at the end.
inline Q det(const QMatrix& m) {
  const std::size_t n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("det: matrix not square");
  if (n == 0) return Q(1);
  if (n == 1) return m(0, 0);
  if (n == 2) return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  if (n == 3)
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  std::vector<Z> a(n * n);
  Z scale = 1;
  for (std::size_t i = 0; i < n; ++i) {
    Z l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, m(i, j).get_den());
    scale *= l;
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).get_num() * (l / m(i, j).get_den());
  }
  int s = 1;
  Z prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p * n + k] == 0) ++p;
    if (p == n) return Q(0);
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[k * n + j]);
      s = -s;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Z t = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = t;
      }
    }
    prev = a[k * n + k];
  }
  Q r(a[(n - 1) * n + (n - 1)] * s, scale);
  r.canonicalize();
  return r;
}

// Cofactor expansion; exponential. Used as an oracle, and for small jet
// determinants where elimination cannot pivot on a zero value.
template <class T>
T det_cofactor(const Matrix<T>& m) {
  const std::size_t n = m.rows();
  if (n == 0) return T(1);
  if (n == 1) return m(0, 0);
  T d(0);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<std::size_t> rs, cs;
    for (std::size_t i = 1; i < n; ++i) rs.push_back(i);
    for (std::size_t c = 0; c < n; ++c)
      if (c != j) cs.push_back(c);
    T t = m(0, j) * det_cofactor(m.submatrix(rs, cs));
    if (j % 2) d -= t; else d += t;
  }
  return d;
}

// Over jets, a singular value does not imply vanishing partials, so small
// determinants go through the expansion and larger ones only when no value
// pivot exists.
inline Jet det(const JetMatrix& m) {
  if (m.rows() <= 4) return det_cofactor(m);
  Jet d = det_gauss(m);
  if (d.v == 0) return det_cofactor(m);
  return d;
}

// Reduced row echelon form in place; returns pivot columns.
inline std::vector<std::size_t> rref(QMatrix& m) {
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && m(p, c) == 0) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Q inv = 1 / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      Q f = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

inline std::size_t rank(QMatrix m) { return rref(m).size(); }

// Basis of {x : M x = 0}, one vector per free column.
inline std::vector<std::vector<Q>> nullspace(QMatrix m) {
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols(), false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::vector<Q>> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_piv[f]) continue;
    std::vector<Q> x(m.cols(), Q(0));
    x[f] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = -m(i, f);
    basis.push_back(std::move(x));
  }
  return basis;
}

// Rows spanning the orthogonal complement of the row span of M.
inline QMatrix orthogonal_complement(const QMatrix& m) {
  if (rank(m) != m.rows()) throw std::invalid_argument("orthogonal_complement: matrix not of full row rank");
  auto ns = nullspace(m);
  QMatrix c(ns.size(), m.cols());
  for (std::size_t i = 0; i < ns.size(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) c(i, j) = ns[i][j];
  return c;
}

struct SingularMatrix : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Solve A X = B for square nonsingular A (Gauss-Jordan with value pivoting).
template <class T>
Matrix<T> solve(Matrix<T> a, Matrix<T> b) {
  const std::size_t n = a.rows();
  if (n != a.cols() || b.rows() != n) throw std::invalid_argument("solve: shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && value_of(a(p, k)) == 0) ++p;
    if (p == n) throw SingularMatrix("solve: singular matrix");
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(k, j));
      for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(p, j), b(k, j));
    }
    T inv = T(1) / a(k, k);
    for (std::size_t j = k; j < n; ++j) a(k, j) *= inv;
    for (std::size_t j = 0; j < b.cols(); ++j) b(k, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      if constexpr (!std::is_same_v<T, Jet>) {
        if (a(i, k) == 0) continue;
      }
      T f = a(i, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
  return b;
}

// Rational systems: fraction-free elimination over the integers (no gcds in
// the inner loop), then back substitution.
inline QMatrix solve(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.rows(), c = b.cols(), w = n + b.cols();
  if (n != a.cols() || b.rows() != n) throw std::invalid_argument("solve: shape mismatch");
  std::vector<Z> m(n * w);
  auto at = [&](std::size_t i, std::size_t j) -> Z& { return m[i * w + j]; };
  for (std::size_t i = 0; i < n; ++i) {
    Z l = 1;
    for (std::size_t j = 0; j < n; ++j) l = lcm(l, a(i, j).get_den());
    for (std::size_t j = 0; j < c; ++j) l = lcm(l, b(i, j).get_den());
    for (std::size_t j = 0; j < n; ++j) at(i, j) = a(i, j).get_num() * (l / a(i, j).get_den());
    for (std::size_t j = 0; j < c; ++j) at(i, n + j) = b(i, j).get_num() * (l / b(i, j).get_den());
  }
  Z prev = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && at(p, k) == 0) ++p;
    if (p == n) throw SingularMatrix("solve: singular matrix");
    if (p != k)
      for (std::size_t j = 0; j < w; ++j) std::swap(at(p, j), at(k, j));
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < w; ++j) {
        Z t = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(t.get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = t;
      }
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  QMatrix x(n, c);
  for (std::size_t col = 0; col < c; ++col) {
    for (std::size_t ii = n; ii-- > 0;) {
      Q s(at(ii, n + col));
      for (std::size_t j = ii + 1; j < n; ++j) s -= Q(at(ii, j)) * x(j, col);
      x(ii, col) = s / Q(at(ii, ii));
    }
  }
  return x;
}

template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  return solve(a, Matrix<T>::identity(a.rows()));
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
  Matrix<T> s(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) s(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) s(a.rows() + i, j) = b(i, j);
  return s;
}

std::string to_debug_string(const QMatrix& m);

}  // namespace twistlab
