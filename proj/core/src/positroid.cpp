#include "twistlab/positroid.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <tuple>

namespace twistlab {

namespace {

void require_class(const AffinePermutation& f, int k) {
  if (k < 0 || k > f.n() || f.sum_shift() != 0 || !f.in_class(k, f.n() - k))
    throw std::invalid_argument("permutation " + f.str() + " is not in the bounded class for k=" + std::to_string(k));
}

// Position of x in the cyclic order starting at i.
int cyc_key(int x, int i, int n) { return ((x - i) % n + n) % n; }

std::vector<int> cyc_sorted(Subset s, int i, int n) {
  std::vector<int> v;
  for (int x : elements(s)) v.push_back(cyc_key(x, i, n));
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

GrassmannNecklace necklace_of(const AffinePermutation& f, int k) {
  require_class(f, k);
  const int n = f.n();
  GrassmannNecklace g{n, k, {}};
  for (long i = 1; i <= n; ++i) {
    Subset s = 0;
    // f(j) + k <= j + n, so only j >= i - n can reach i.
    for (long j = i - n; j < i; ++j)
      if (f(j) + k >= i) s |= singleton(mod1(f(j) + k, n));
    if (subset_size(s) != k) throw std::logic_error("necklace_of: wrong size at " + std::to_string(i));
    g.I.push_back(s);
  }
  return g;
}

bool gale_leq(int i, Subset a, Subset b, int n) {
  auto x = cyc_sorted(a, i, n), y = cyc_sorted(b, i, n);
  if (x.size() != y.size()) return false;
  for (std::size_t r = 0; r < x.size(); ++r)
    if (x[r] > y[r]) return false;
  return true;
}

bool Positroid::contains(Subset s) const { return std::binary_search(bases.begin(), bases.end(), s); }

Positroid positroid_of(const AffinePermutation& f, int k) {
  auto neck = necklace_of(f, k);
  const int n = f.n();
  Positroid p{n, k, {}};
  // The necklace entry I_i is the Gale-minimal basis in the order starting at i.
  for (Subset s : k_subsets(n, k)) {
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) ok = gale_leq(i, neck.I[i - 1], s, n);
    if (ok) p.bases.push_back(s);
  }
  std::sort(p.bases.begin(), p.bases.end());
  return p;
}

int tnn_sign(const PluckerVector& p) {
  Subset pos = 0, neg = 0;
  bool has_pos = false, has_neg = false;
  for (std::size_t i = 0; i < p.sets.size(); ++i) {
    int s = sign(p.coords[i]);
    if (s > 0 && !has_pos) has_pos = true, pos = p.sets[i];
    if (s < 0 && !has_neg) has_neg = true, neg = p.sets[i];
  }
  if (has_pos && has_neg)
    throw NotTNN(pos, neg, "not totally nonnegative: Plücker " + subset_label(pos, p.n) + " > 0 but " +
                               subset_label(neg, p.n) + " < 0");
  return has_neg ? -1 : 1;
}

bool satisfies_rank_characterization(const CyclicMatrix& v, const AffinePermutation& f) {
  const int n = v.n();
  const long k = static_cast<long>(v.rows());
  for (long a = 1; a <= n; ++a) {
    auto rk = prefix_ranks(v, a, n);
    for (long b = a + 1; b <= a + n; ++b) {
      long count = 0;
      for (long i = a - n; i < a; ++i)
        if (a <= f(i) + k && f(i) + k < b) ++count;
      if (static_cast<long>(rk[b - a]) != count) return false;
    }
  }
  return true;
}

AffinePermutation cell_of(const CyclicMatrix& v) {
  const int n = v.n();
  const long k = static_cast<long>(v.rows());
  if (rank(v.m) != v.rows()) throw std::invalid_argument("cell_of: matrix not of full row rank");
  tnn_sign(plucker(v));
  std::vector<std::vector<std::size_t>> rk;
  for (long a = 1; a <= n + 1; ++a) rk.push_back(prefix_ranks(v, a, n + 1));
  std::vector<long> w(n);
  for (long i = 1; i <= n; ++i) {
    // V(i) lies in the span of V(i+1..j) iff appending it does not raise the rank.
    long j = i;
    while (rk[i - 1][j - i + 1] != rk[i][j - i]) ++j;
    w[i - 1] = j - k;
  }
  AffinePermutation f(std::move(w));
  if (!satisfies_rank_characterization(v, f))
    throw std::logic_error("cell_of: rank characterization failed for " + f.str());
  return f;
}

AffinePermutation cell_of(const QMatrix& v) { return cell_of(CyclicMatrix(v, static_cast<int>(v.rows()) - 1)); }

bool is_weakly_separated(Subset s, Subset t, int n) {
  Subset a = s & ~t, b = t & ~s;
  // Walk the symmetric difference in cyclic order; weak separation means the
  // two colours form at most two cyclic runs.
  std::vector<int> colour;
  for (int i = 1; i <= n; ++i) {
    if (contains(a, i)) colour.push_back(0);
    else if (contains(b, i)) colour.push_back(1);
  }
  int changes = 0;
  for (std::size_t i = 0; i < colour.size(); ++i)
    if (colour[i] != colour[(i + 1) % colour.size()]) ++changes;
  return changes <= 2;
}

int cell_dimension(const AffinePermutation& f, int k) {
  require_class(f, k);
  return static_cast<int>(k * (f.n() - k) - f.inversions());
}

// ---------------------------------------------------------------- Le-diagrams

int LeDiagram::num_plus() const {
  int c = 0;
  for (const auto& row : plus)
    for (char x : row) c += x;
  return c;
}

bool LeDiagram::le_condition() const {
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < shape[r]; ++c) {
      if (plus[r][c]) continue;
      bool left = false, above = false;
      for (int c2 = 0; c2 < c; ++c2) left = left || plus[r][c2];
      for (int r2 = 0; r2 < r; ++r2) above = above || plus[r2][c];
      if (left && above) return false;
    }
  return true;
}

std::vector<std::pair<int, int>> LeDiagram::plus_boxes() const {
  std::vector<std::pair<int, int>> b;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < shape[r]; ++c)
      if (plus[r][c]) b.emplace_back(r, c);
  return b;
}

LeDiagram le_shape(int n, int k, Subset sources) {
  if (subset_size(sources) != k) throw std::invalid_argument("le_shape: source set has wrong size");
  LeDiagram d;
  d.n = n;
  d.k = k;
  d.sources = sources;
  d.col_label.assign(n - k, 0);
  d.col_height.assign(n - k, 0);
  // The boundary path runs from the NE corner to the SW corner; step t is
  // vertical when t is a source.
  int h = 0;
  for (int t = 1; t <= n; ++t) {
    if (contains(sources, t)) {
      d.row_label.push_back(t);
      d.shape.push_back(n - k - h);
    } else {
      int c = n - k - 1 - h;
      d.col_label[c] = t;
      d.col_height[c] = static_cast<int>(d.row_label.size());
      ++h;
    }
  }
  for (int r = 0; r < k; ++r) d.plus.emplace_back(d.shape[r], 0);
  return d;
}

template <class T>
Matrix<T> le_network_matrix(const LeDiagram& d, const std::vector<T>& weights) {
  auto boxes = d.plus_boxes();
  if (weights.size() != boxes.size()) throw std::invalid_argument("le_network_matrix: wrong number of weights");
  std::vector<std::vector<int>> idx(d.k);
  for (int r = 0; r < d.k; ++r) idx[r].assign(d.shape[r], -1);
  for (std::size_t b = 0; b < boxes.size(); ++b) idx[boxes[b].first][boxes[b].second] = static_cast<int>(b);

  Matrix<T> v(d.k, d.n);
  for (int src = 0; src < d.k; ++src) {
    // acc[r][c]: total weight of paths from source src arriving at box (r,c).
    std::vector<std::vector<T>> acc(d.k);
    for (int r = 0; r < d.k; ++r) acc[r].assign(d.shape[r], T(0));
    for (int r = src; r < d.k; ++r) {
      int east = -1;  // next '+' to the east in this row
      for (int c = d.shape[r] - 1; c >= 0; --c) {
        int b = idx[r][c];
        if (b < 0) continue;
        T a(0);
        if (east >= 0) a += acc[r][east] * weights[b];
        else if (r == src) a += weights[b];
        for (int r2 = r - 1; r2 >= src; --r2) {
          if (c < d.shape[r2] && idx[r2][c] >= 0) {
            a += acc[r2][c];
            break;
          }
        }
        acc[r][c] = a;
        east = c;
      }
    }
    const int s = d.row_label[src];
    v(src, s - 1) = T(1);
    for (int c = 0; c < d.n - d.k; ++c) {
      int bottom = -1;
      for (int r = d.col_height[c] - 1; r >= src; --r)
        if (idx[r][c] >= 0) {
          bottom = r;
          break;
        }
      if (bottom < 0) continue;
      const int t = d.col_label[c];
      int between = 0;
      for (int x : d.row_label)
        if (s < x && x < t) ++between;
      v(src, t - 1) = (between % 2 == 0) ? acc[bottom][c] : -acc[bottom][c];
    }
  }
  return v;
}

template Matrix<Q> le_network_matrix<Q>(const LeDiagram&, const std::vector<Q>&);
template Matrix<Jet> le_network_matrix<Jet>(const LeDiagram&, const std::vector<Jet>&);

// Declared in plabic.cpp.
AffinePermutation le_trip_permutation(const LeDiagram& d);

namespace {

struct LeCache {
  std::mutex mu;
  std::map<std::pair<int, std::string>, LeDiagram> by_cell;
  std::map<std::tuple<int, int, Subset>, bool> shapes_done;
};

LeCache& le_cache() {
  static LeCache c;
  return c;
}

// Every Le-filling of the shape, tagged with the cell it parametrizes.
void fill_shape(LeCache& cache, int n, int k, Subset sources) {
  LeDiagram d = le_shape(n, k, sources);
  std::vector<std::pair<int, int>> cells;
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < d.shape[r]; ++c) cells.emplace_back(r, c);
  // Track, per box, whether a '+' lies to the left / above, for the Le-condition.
  auto rec = [&](auto&& self, std::size_t pos) -> void {
    if (pos == cells.size()) {
      AffinePermutation f = le_trip_permutation(d);
      cache.by_cell[{k, f.str()}] = d;
      return;
    }
    auto [r, c] = cells[pos];
    d.plus[r][c] = 1;
    self(self, pos + 1);
    d.plus[r][c] = 0;
    bool left = false, above = false;
    for (int c2 = 0; c2 < c; ++c2) left = left || d.plus[r][c2];
    for (int r2 = 0; r2 < r; ++r2) above = above || d.plus[r2][c];
    if (!(left && above)) self(self, pos + 1);
  };
  rec(rec, 0);
}

}  // namespace

const LeDiagram& le_diagram_of(const AffinePermutation& f, int k) {
  auto neck = necklace_of(f, k);
  auto& cache = le_cache();
  std::lock_guard<std::mutex> lock(cache.mu);
  auto key = std::make_tuple(f.n(), k, neck.I[0]);
  if (!cache.shapes_done[key]) {
    fill_shape(cache, f.n(), k, neck.I[0]);
    cache.shapes_done[key] = true;
  }
  auto it = cache.by_cell.find({k, f.str()});
  if (it == cache.by_cell.end()) throw std::logic_error("le_diagram_of: no Le-diagram found for " + f.str());
  return it->second;
}

// ---------------------------------------------------------- parametrization

namespace {
template <class T>
Cyclic<T> parametrize_impl(const AffinePermutation& f, int k, const std::vector<T>& params) {
  const LeDiagram& d = le_diagram_of(f, k);
  if (static_cast<int>(params.size()) != d.num_plus())
    throw std::invalid_argument("parametrize_cell: expected " + std::to_string(d.num_plus()) + " parameters");
  for (const auto& p : params)
    if (value_of(p) <= 0) throw std::invalid_argument("parametrize_cell: parameters must be positive");
  return Cyclic<T>(le_network_matrix(d, params), k - 1);
}
}  // namespace

CyclicMatrix parametrize_cell(const AffinePermutation& f, int k, const std::vector<Q>& params) {
  return parametrize_impl(f, k, params);
}

Cyclic<Jet> parametrize_cell_jet(const AffinePermutation& f, int k, const std::vector<Jet>& params) {
  return parametrize_impl(f, k, params);
}

const char* to_string(TnnClass c) {
  switch (c) {
    case TnnClass::NotTNN: return "NotTNN";
    case TnnClass::TNN: return "TNN";
    case TnnClass::TotallyPositive: return "TotallyPositive";
    case TnnClass::InGrGeM: return "InGrGeM";
  }
  return "?";
}

TnnClass tnn_membership(const CyclicMatrix& v, std::optional<int> m) {
  auto p = plucker(v);
  try {
    tnn_sign(p);
  } catch (const NotTNN&) {
    return TnnClass::NotTNN;
  }
  if (m) {
    const long k = static_cast<long>(v.rows());
    const long l = v.n() - k - *m;
    if (l < 0) throw std::invalid_argument("tnn_membership: m too large");
    bool ok = true;
    for (long j = 1; j <= v.n() && ok; ++j) ok = prefix_ranks(v, j - l, l + k).back() == static_cast<std::size_t>(k);
    if (ok) return TnnClass::InGrGeM;
  }
  for (const auto& c : p.coords)
    if (c == 0) return TnnClass::TNN;
  return TnnClass::TotallyPositive;
}

bool is_stackable(const AffinePermutation& f, int k, const AffinePermutation& g, int l) {
  const int n = f.n();
  if (g.n() != n || k + l > n) throw std::invalid_argument("is_stackable: incompatible sizes");
  auto mf = positroid_of(f, k), mg = positroid_of(g, l);
  for (long j = 1; j <= n; ++j) {
    Subset w = cyclic_interval(j - l, j + k, n);
    bool found = false;
    for (Subset i : mf.bases)
      if ((i & ~w) == 0 && mg.contains(w & ~i)) {
        found = true;
        break;
      }
    if (!found) return false;
  }
  return true;
}

}  // namespace twistlab
