#include "twistlab/affperm.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "twistlab/subsets.hpp"

namespace twistlab {

namespace {
long floordiv(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace

AffinePermutation::AffinePermutation(std::vector<long> window) : w_(std::move(window)) {
  const int nn = n();
  if (nn == 0) throw std::invalid_argument("affine permutation: empty window");
  std::vector<bool> seen(nn, false);
  for (long x : w_) {
    int r = mod1(x, nn) - 1;
    if (seen[r]) throw std::invalid_argument("affine permutation: repeated residue in " + str());
    seen[r] = true;
  }
}

AffinePermutation AffinePermutation::identity(int n) {
  std::vector<long> w(n);
  for (int i = 0; i < n; ++i) w[i] = i + 1;
  return AffinePermutation(std::move(w));
}

AffinePermutation AffinePermutation::parse(const std::string& s) {
  std::vector<long> w;
  std::string t;
  for (char c : s)
    if (c != '[' && c != ']' && c != ' ') t.push_back(c);
  std::stringstream ss(t);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("bad window: '" + s + "'");
    std::size_t pos = 0;
    long v = std::stol(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad window: '" + s + "'");
    w.push_back(v);
  }
  return AffinePermutation(std::move(w));
}

long AffinePermutation::operator()(long i) const {
  const int nn = n();
  long q = floordiv(i - 1, nn);
  return w_[static_cast<std::size_t>(i - 1 - q * nn)] + q * nn;
}

long AffinePermutation::sum_shift() const {
  long s = 0;
  for (int i = 1; i <= n(); ++i) s += w_[i - 1] - i;
  return s / n();
}

bool AffinePermutation::in_class(int a, int b) const {
  for (int i = 1; i <= n(); ++i)
    if (w_[i - 1] < i - a || w_[i - 1] > i + b) return false;
  return true;
}

int AffinePermutation::min_a() const {
  long a = 0;
  for (int i = 1; i <= n(); ++i) a = std::max(a, i - w_[i - 1]);
  return static_cast<int>(a);
}

int AffinePermutation::min_b() const {
  long b = 0;
  for (int i = 1; i <= n(); ++i) b = std::max(b, w_[i - 1] - i);
  return static_cast<int>(b);
}

long AffinePermutation::inversions() const {
  // An inversion (i, j) with f in S̃_n(-a, b) forces j < i + a + b.
  const long span = min_a() + min_b();
  long inv = 0;
  for (long i = 1; i <= n(); ++i) {
    long fi = (*this)(i);
    for (long j = i + 1; j < i + span; ++j)
      if ((*this)(j) < fi) ++inv;
  }
  return inv;
}

AffinePermutation AffinePermutation::inverse() const {
  const int nn = n();
  std::vector<long> g(nn);
  for (long i = 1; i <= nn; ++i) {
    long v = w_[i - 1];
    int r = mod1(v, nn);
    g[r - 1] = i - (v - r);
  }
  return AffinePermutation(std::move(g));
}

AffinePermutation AffinePermutation::rotate(long s) const {
  std::vector<long> g(n());
  for (long i = 1; i <= n(); ++i) g[i - 1] = (*this)(i + s) - s;
  return AffinePermutation(std::move(g));
}

std::string AffinePermutation::str() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < w_.size(); ++i) os << (i ? "," : "") << w_[i];
  os << "]";
  return os.str();
}

AffinePermutation compose(const AffinePermutation& f, const AffinePermutation& g) {
  if (f.n() != g.n()) throw std::invalid_argument("compose: period mismatch");
  std::vector<long> w(f.n());
  for (long i = 1; i <= f.n(); ++i) w[i - 1] = f(g(i));
  return AffinePermutation(std::move(w));
}

AffinePermutation transposition(int n, long a, long b) {
  if (mod1(a, n) == mod1(b, n)) throw std::invalid_argument("transposition: congruent points");
  std::vector<long> w(n);
  for (long i = 1; i <= n; ++i) w[i - 1] = i;
  int ra = mod1(a, n), rb = mod1(b, n);
  w[ra - 1] = ra + (b - a);
  w[rb - 1] = rb + (a - b);
  return AffinePermutation(std::move(w));
}

namespace {
std::vector<AffinePermutation> covers(const AffinePermutation& f, long delta) {
  const int n = f.n();
  const long inv = f.inversions();
  // Right multiplication by t swaps the values at a and b (and translates).
  // An inversion change of ±1 needs |b - a| within the displacement span of
  // f and of the result; the bound below is generous and then filtered.
  const long span = f.min_a() + f.min_b() + n;
  std::vector<AffinePermutation> out;
  for (long a = 1; a <= n; ++a) {
    for (long b = a + 1; b <= a + span; ++b) {
      if ((b - a) % n == 0) continue;
      auto g = compose(f, transposition(n, a, b));
      if (g.inversions() == inv + delta) out.push_back(g);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}
}  // namespace

std::vector<AffinePermutation> covers_down(const AffinePermutation& f) { return covers(f, -1); }
std::vector<AffinePermutation> covers_up(const AffinePermutation& f) { return covers(f, +1); }

std::vector<AffinePermutation> enumerate_bounded(int n, int a, int b, std::optional<long> inv) {
  std::vector<AffinePermutation> out;
  std::vector<long> w(n);
  std::vector<bool> used(n, false);
  // Partial sums must be able to return to zero: remaining slots each move by
  // at most b up and a down.
  auto rec = [&](auto&& self, int i, long shift) -> void {
    if (i > n) {
      if (shift != 0) return;
      AffinePermutation f(w);
      if (!inv || f.inversions() == *inv) out.push_back(std::move(f));
      return;
    }
    const long rem = n - i + 1;
    for (long v = i - a; v <= i + b; ++v) {
      int r = mod1(v, n) - 1;
      if (used[r]) continue;
      long s = shift + (v - i);
      const long rest = rem - 1;
      if (s - rest * a > 0 || s + rest * b < 0) continue;
      used[r] = true;
      w[i - 1] = v;
      self(self, i + 1, s);
      used[r] = false;
    }
  };
  rec(rec, 1, 0);
  return out;
}

}  // namespace twistlab
