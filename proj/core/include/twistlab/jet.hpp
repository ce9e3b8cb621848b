#pragma once

// First-order jets over Q: a value plus directional derivatives along a
// fixed frame of d tangent vectors. An empty partials vector means "constant",
// so constants mix freely with jets of any width.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "twistlab/rational.hpp"

namespace twistlab {

struct Jet {
  Q v;
  std::vector<Q> d;

  Jet() = default;
  Jet(const Q& value) : v(value) {}  // NOLINT: implicit lift of constants
  Jet(long value) : v(value) {}      // NOLINT
  Jet(int value) : v(value) {}       // NOLINT
  Jet(const Q& value, std::vector<Q> partials) : v(value), d(std::move(partials)) {}

  // The i-th coordinate variable of a d-dimensional coordinate frame.
  static Jet variable(const Q& value, std::size_t i, std::size_t width) {
    Jet j(value);
    j.d.assign(width, Q(0));
    j.d.at(i) = 1;
    return j;
  }

  std::size_t width() const { return d.size(); }
  const Q& value() const { return v; }
  Q partial(std::size_t i) const { return i < d.size() ? d[i] : Q(0); }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    axpy(Q(1), o.d);
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    axpy(Q(-1), o.d);
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    // (a + a')(b + b') = ab + (a b' + a' b)
    for (auto& x : d) x *= o.v;
    axpy(v, o.d);
    v *= o.v;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    if (o.v == 0) throw std::domain_error("jet division by a zero value");
    // (a/b)' = (a' b - a b') / b^2
    Q inv = 1 / o.v;
    Q q = v * inv;
    for (auto& x : d) x *= inv;
    axpy(-q * inv, o.d);
    v = q;
    return *this;
  }
  Jet operator-() const {
    Jet r = *this;
    r.v = -r.v;
    for (auto& x : r.d) x = -x;
    return r;
  }

  friend Jet operator+(Jet a, const Jet& b) { return a += b; }
  friend Jet operator-(Jet a, const Jet& b) { return a -= b; }
  friend Jet operator*(Jet a, const Jet& b) { return a *= b; }
  friend Jet operator/(Jet a, const Jet& b) { return a /= b; }
  // Jets compare by value only; this is what pivot searches need.
  friend bool operator==(const Jet& a, int z) { return a.v == z; }
  friend bool operator!=(const Jet& a, int z) { return a.v != z; }

 private:
  void axpy(const Q& s, const std::vector<Q>& x) {
    if (x.empty()) return;
    if (d.size() < x.size()) d.resize(x.size(), Q(0));
    for (std::size_t i = 0; i < x.size(); ++i) d[i] += s * x[i];
  }
};

// Exact equality including partials (missing partials count as zero).
inline bool same_jet(const Jet& a, const Jet& b) {
  if (a.v != b.v) return false;
  std::size_t w = std::max(a.width(), b.width());
  for (std::size_t i = 0; i < w; ++i)
    if (a.partial(i) != b.partial(i)) return false;
  return true;
}

// Scalar traits used by the generic matrix code.
inline const Q& value_of(const Q& x) { return x; }
inline const Q& value_of(const Jet& x) { return x.v; }

}  // namespace twistlab
