#include "twistlab/twist.hpp"

#include "twistlab/positroid.hpp"

namespace twistlab {

TwistedPair stacked_twist(const CyclicMatrix& v, const CyclicMatrix& w) {
  const int k = static_cast<int>(v.rows()), l = static_cast<int>(w.rows()), n = v.n();
  if (w.n() != n) throw TwistPrecondition("stacked_twist: V and W have different numbers of columns");
  const int m = n - k - l;
  if (k < 1 || l < 1 || m < 0 || m % 2 != 0)
    throw TwistPrecondition("stacked_twist: need k, l >= 1 and m = n-k-l even and nonnegative");
  if (tnn_membership(v, m) != TnnClass::InGrGeM) throw TwistPrecondition("stacked_twist: V is not in Gr>=m(k,n)");
  if (tnn_membership(alt(w)) != TnnClass::TotallyPositive)
    throw TwistPrecondition("stacked_twist: alt(W) is not totally positive (W not in the dual positive part)");
  try {
    return stacked_twist_unchecked(v, w);
  } catch (const NonGeneric& e) {
    throw TwistPrecondition("stacked_twist: stack(V,W) is not circular-generic at window " + std::to_string(e.window));
  }
}

namespace {

Q qabs(const Q& x) { return x < 0 ? Q(-x) : x; }

// Sorted representatives in [n] of an integer interval union; empty if the
// union does not have the requested size modulo n.
std::vector<long> mod_set(const std::vector<std::pair<long, long>>& parts, int n, int size) {
  Subset s = 0;
  int total = 0;
  for (auto [a, b] : parts) {
    total += static_cast<int>(b - a);
    s |= cyclic_interval(a, b, n);
  }
  if (total != size || subset_size(s) != size) return {};
  std::vector<long> cols;
  for (int x : elements(s)) cols.push_back(x);
  return cols;
}

}  // namespace

MinorReport verify_minor_identities(const CyclicMatrix& v, const CyclicMatrix& w) {
  const int k = static_cast<int>(v.rows()), l = static_cast<int>(w.rows()), n = v.n();
  const int r = k + l;
  CyclicMatrix u(vstack(v.m, w.m), k - 1);
  CyclicMatrix ut = right_twist(u, k, l);
  auto wt = row_block(ut, 0, k, l - 1);
  auto vt = row_block(ut, k, l, l - 1);
  MinorReport rep;
  auto tally = [&](const Q& lhs, const Q& rhs, const std::string& what) {
    ++rep.checked;
    if (qabs(lhs) != qabs(rhs)) {
      rep.violations.push_back(what + ": " + to_string(lhs) + " vs ±" + to_string(rhs));
      return;
    }
    if (lhs == rhs) ++rep.positive_sign;
    else ++rep.negative_sign;
  };

  for (long j = 1; j <= n; ++j) {
    // Window minors, with the exact sign.
    long e = 0;
    for (long t = j; t < j + r; ++t) e += t;
    Q lhs = ut.interval_minor(j, j + r);
    Q rhs = Q(neg1pow(e)) / u.interval_minor(j - l, j + k);
    ++rep.checked;
    if (lhs != rhs)
      rep.violations.push_back("window minor at j=" + std::to_string(j) + ": " + to_string(lhs) + " vs " + to_string(rhs));

    tally(wt.interval_minor(j - k, j), w.interval_minor(j - l, j) / u.interval_minor(j - k - l, j),
          "consecutive W~ at j=" + std::to_string(j));
    tally(vt.interval_minor(j, j + l), v.interval_minor(j, j + k) / u.interval_minor(j - l, j + k),
          "consecutive V~ at j=" + std::to_string(j));
  }

  for (int p = 0; p <= r; ++p) {
    const int q = r - p;
    for (long a = 1; a <= n; ++a)
      for (long b = 1; b <= n; ++b) {
        auto J = mod_set({{a, a + p}, {b, b + q}}, n, r);
        auto I = mod_set({{a + k - q, a + k}, {b + k - p, b + k}}, n, r);
        if (J.empty() || I.empty()) continue;
        Q lhs = ut.minor(J);
        Q rhs = u.minor(I) / (u.interval_minor(a - l, a + k) * u.interval_minor(b - l, b + k));
        tally(lhs, rhs,
              "(I,J) identity at p=" + std::to_string(p) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
      }
  }
  return rep;
}

}  // namespace twistlab
