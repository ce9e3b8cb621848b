#pragma once

// The twist τ on (k+ℓ)×n matrices and the stacked twist map θ(V, W) = (W̃, Ṽ).

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "twistlab/cyclic.hpp"
#include "twistlab/jet.hpp"

namespace twistlab {

struct NonGeneric : std::invalid_argument {
  long window;  // j with Δ_{[j-ℓ, j+k)} = 0
  NonGeneric(long j, const std::string& msg) : std::invalid_argument(msg), window(j) {}
};

struct TwistPrecondition : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Δ_{[j-ℓ, j+k)}(U) for j = 1..n.
template <class T>
std::vector<T> window_dets(const Cyclic<T>& u, int k, int l) {
  std::vector<T> d;
  for (long j = 1; j <= u.n(); ++j) d.push_back(u.interval_minor(j - l, j + k));
  return d;
}

template <class T>
std::optional<long> first_degenerate_window(const Cyclic<T>& u, int k, int l) {
  if (static_cast<int>(u.rows()) != k + l) throw std::invalid_argument("twist: U must have k+l rows");
  for (long j = 1; j <= u.n(); ++j)
    if (value_of(u.interval_minor(j - l, j + k)) == 0) return j;
  return std::nullopt;
}

template <class T>
bool is_circular_generic(const Cyclic<T>& u, int k, int l) {
  return !first_degenerate_window(u, k, l).has_value();
}

namespace detail {
template <class T>
[[noreturn]] void throw_non_generic(long j) {
  throw NonGeneric(j, "matrix is not circular-generic: window " + std::to_string(j) + " is degenerate");
}
}  // namespace detail

// ũ(j) pairs to (-1)^j with U(j-ℓ) and to 0 with U(j-ℓ+1..j+k-1).
template <class T>
Cyclic<T> right_twist(const Cyclic<T>& u, int k, int l) {
  const int r = k + l, n = u.n();
  if (static_cast<int>(u.rows()) != r) throw std::invalid_argument("twist: U must have k+l rows");
  Matrix<T> out(r, n);
  for (long j = 1; j <= n; ++j) {
    Matrix<T> mt = u.window(j - l, j + k).transpose();
    Matrix<T> rhs(r, 1);
    rhs(0, 0) = T(neg1pow(j));
    Matrix<T> x;
    // A singular window is exactly a failure of circular genericity.
    try {
      x = solve(mt, rhs);
    } catch (const SingularMatrix&) {
      detail::throw_non_generic<T>(j);
    }
    for (int i = 0; i < r; ++i) out(i, j - 1) = x(i, 0);
  }
  return Cyclic<T>(std::move(out), l - 1);
}

// Inverse of right_twist: U(j) pairs to (-1)^{j+ℓ} with ũ(j+ℓ) and to 0 with
// ũ(j-k+1..j+ℓ-1).
template <class T>
Cyclic<T> left_twist(const Cyclic<T>& ut, int k, int l) {
  const int r = k + l, n = ut.n();
  if (static_cast<int>(ut.rows()) != r) throw std::invalid_argument("twist: input must have k+l rows");
  Matrix<T> out(r, n);
  for (long j = 1; j <= n; ++j) {
    Matrix<T> m = ut.window(j - k + 1, j + l + 1).transpose();
    Matrix<T> rhs(r, 1);
    rhs(r - 1, 0) = T(neg1pow(j + l));
    Matrix<T> x;
    try {
      x = solve(m, rhs);
    } catch (const SingularMatrix&) {
      detail::throw_non_generic<T>(j);
    }
    for (int i = 0; i < r; ++i) out(i, j - 1) = x(i, 0);
  }
  return Cyclic<T>(std::move(out), k - 1);
}

template <class T>
struct TwistedPairT {
  Cyclic<T> Wt;  // k×n, exponent ℓ-1
  Cyclic<T> Vt;  // ℓ×n, exponent ℓ-1
};
using TwistedPair = TwistedPairT<Q>;

// θ(V, W) without membership checks (any scalar type).
template <class T>
TwistedPairT<T> stacked_twist_unchecked(const Cyclic<T>& v, const Cyclic<T>& w) {
  const int k = static_cast<int>(v.rows()), l = static_cast<int>(w.rows());
  auto ut = right_twist(Cyclic<T>(vstack(v.m, w.m), k - 1), k, l);
  return {row_block(ut, 0, k, l - 1), row_block(ut, k, l, l - 1)};
}

// θ(V, W) after checking m = n-k-ℓ even, V ∈ Gr≥m(k,n), alt(W) totally
// positive, and circular genericity of stack(V, W).
TwistedPair stacked_twist(const CyclicMatrix& v, const CyclicMatrix& w);

// Column j multiplied by (-1)^{j-1}.
template <class T>
Cyclic<T> alt(const Cyclic<T>& w) {
  Matrix<T> m = w.m;
  for (std::size_t j = 1; j < m.cols(); j += 2)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
  return Cyclic<T>(std::move(m), (w.e + w.n()) % 2);
}

struct MinorReport {
  long checked = 0;
  long positive_sign = 0, negative_sign = 0;  // observed signs of the "±" identities
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Exact check of the circular-minor identities relating U and τ(U):
// window minors of τ(U), the (I, J) identities for all p + q = k + ℓ and
// a, b ∈ [n], and the consecutive-minor formulas for W̃ and Ṽ.
MinorReport verify_minor_identities(const CyclicMatrix& v, const CyclicMatrix& w);

}  // namespace twistlab
