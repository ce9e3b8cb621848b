// Le-graph of a Le-diagram, its trips and its face labels.

#include <algorithm>
#include <cmath>

#include <mutex>

#include "twistlab/positroid.hpp"
#include "twistlab/rng.hpp"

namespace twistlab {

namespace {

struct Point {
  double x, y;
};

// Even-odd rule.
bool inside(const std::vector<Point>& poly, Point p) {
  bool in = false;
  for (std::size_t i = 0, j = poly.size() - 1; i < poly.size(); j = i++) {
    const Point& a = poly[i];
    const Point& b = poly[j];
    if ((a.y > p.y) != (b.y > p.y) && p.x < (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x) in = !in;
  }
  return in;
}

struct Builder {
  PlabicGraph g;
  // Ports of each box: the vertex that owns its N, E, S, W edge.
  std::vector<std::vector<std::array<int, 4>>> port;
  enum { N, E, S, W };

  int add(double x, double y, PlabicGraph::Colour c, int label = 0) {
    g.vertices.push_back({x, y, c, label, {}});
    return static_cast<int>(g.vertices.size()) - 1;
  }
  void edge(int a, int b) {
    g.vertices[a].nbrs.push_back(b);
    g.vertices[b].nbrs.push_back(a);
  }
};

}  // namespace

PlabicGraph plabic_graph_of(const LeDiagram& d) {
  Builder b;
  b.g.n = d.n;
  b.g.k = d.k;
  const int n = d.n, k = d.k;

  // Boundary vertices, indexed by label - 1.
  std::vector<int> bnd(n + 1, -1);
  for (int r = 0; r < k; ++r) bnd[d.row_label[r]] = b.add(d.shape[r] - 0.5, -r, PlabicGraph::Boundary, d.row_label[r]);
  for (int c = 0; c < n - k; ++c)
    bnd[d.col_label[c]] = b.add(c, -d.col_height[c] + 0.5, PlabicGraph::Boundary, d.col_label[c]);

  auto is_plus = [&](int r, int c) { return c < d.shape[r] && d.plus[r][c]; };
  b.port.assign(k, std::vector<std::array<int, 4>>(n - k, {-1, -1, -1, -1}));
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < d.shape[r]; ++c) {
      if (!d.plus[r][c]) continue;
      bool left = false, above = false;
      for (int c2 = 0; c2 < c; ++c2) left = left || is_plus(r, c2);
      for (int r2 = 0; r2 < r; ++r2) above = above || is_plus(r2, c);
      auto& p = b.port[r][c];
      if (left && above) {
        int bl = b.add(c + 0.1, -r + 0.1, PlabicGraph::Black);
        int wh = b.add(c - 0.1, -r - 0.1, PlabicGraph::White);
        b.edge(bl, wh);
        p = {bl, bl, wh, wh};
      } else {
        // Elbows (no '+' left or above) are bivalent, so their colour is immaterial.
        int v = b.add(c, -r, above ? PlabicGraph::Black : PlabicGraph::White);
        p = {v, v, v, v};
      }
    }
  }
  for (int r = 0; r < k; ++r) {
    int east = bnd[d.row_label[r]];
    for (int c = d.shape[r] - 1; c >= 0; --c) {
      if (!d.plus[r][c]) continue;
      b.edge(east, b.port[r][c][Builder::E]);
      east = b.port[r][c][Builder::W];
    }
  }
  for (int c = 0; c < n - k; ++c) {
    int north = -1;
    for (int r = 0; r < d.col_height[c]; ++r) {
      if (!is_plus(r, c)) continue;
      if (north >= 0) b.edge(north, b.port[r][c][Builder::N]);
      north = b.port[r][c][Builder::S];
    }
    if (north >= 0) b.edge(north, bnd[d.col_label[c]]);
  }

  auto& V = b.g.vertices;
  for (auto& v : V) {
    std::sort(v.nbrs.begin(), v.nbrs.end(), [&](int a, int c) {
      return std::atan2(V[a].y - v.y, V[a].x - v.x) < std::atan2(V[c].y - v.y, V[c].x - v.x);
    });
  }

  // Trips: turn maximally right at black vertices and maximally left at white ones.
  b.g.trip.assign(n, 0);
  b.g.trip_path.assign(n, {});
  for (int i = 1; i <= n; ++i) {
    int cur = bnd[i];
    auto& path = b.g.trip_path[i - 1];
    path.push_back(cur);
    if (V[cur].nbrs.empty()) {
      b.g.trip[i - 1] = i;
      continue;
    }
    int prev = cur;
    cur = V[cur].nbrs[0];
    while (V[cur].colour != PlabicGraph::Boundary) {
      path.push_back(cur);
      const auto& nb = V[cur].nbrs;
      const int deg = static_cast<int>(nb.size());
      int at = static_cast<int>(std::find(nb.begin(), nb.end(), prev) - nb.begin());
      // nbrs are counterclockwise; the sharpest right turn is the next one counterclockwise.
      int next = V[cur].colour == PlabicGraph::Black ? nb[(at + 1) % deg] : nb[(at + deg - 1) % deg];
      prev = cur;
      cur = next;
    }
    path.push_back(cur);
    b.g.trip[i - 1] = V[cur].label;
  }

  // Boundary of the disk in clockwise order: along the boundary path from the
  // NE corner (labels increase), then the SW, NW corners.
  std::vector<Point> rim;
  std::vector<std::size_t> rim_at(n + 1);
  {
    double x = n - k - 0.5, y = 0.5;
    rim.push_back({x, y});
    for (int t = 1; t <= n; ++t) {
      if (contains(d.sources, t)) {
        rim_at[t] = rim.size();
        rim.push_back({x, y - 0.5});
        y -= 1;
      } else {
        rim_at[t] = rim.size();
        rim.push_back({x - 0.5, y});
        x -= 1;
      }
      rim.push_back({x, y});
    }
    rim.push_back({-0.5, 0.5});
  }

  std::vector<Point> samples;
  for (auto [r, c] : d.plus_boxes()) samples.push_back({c + 0.2, -r - 0.2});
  samples.push_back({-0.4, 0.4});

  b.g.face_labels.assign(samples.size(), 0);
  for (int i = 1; i <= n; ++i) {
    const int j = b.g.trip[i - 1];
    const auto& path = b.g.trip_path[i - 1];
    std::vector<Point> poly;
    for (int v : path) poly.push_back({V[v].x, V[v].y});
    // Close up along the rim from j forward (clockwise) to i; the faces to the
    // left of the trip are the ones outside this polygon.
    if (i != j) {
      std::size_t p = rim_at[j];
      const std::size_t stop = rim_at[i];
      while (p != stop) {
        p = (p + 1) % rim.size();
        if (p != stop) poly.push_back(rim[p]);
      }
    }
    for (std::size_t f = 0; f < samples.size(); ++f) {
      // Lollipops: a row lollipop's label is in every face, a column's in none.
      bool left = (i == j) ? contains(d.sources, i) : !inside(poly, samples[f]);
      if (left) b.g.face_labels[f] |= singleton(j);
    }
  }
  return b.g;
}

AffinePermutation le_trip_permutation(const LeDiagram& d) {
  auto g = plabic_graph_of(d);
  const int n = d.n, k = d.k;
  std::vector<long> w(n);
  // The trip from i ends at f(i) + k mod n.
  for (int i = 1; i <= n; ++i) {
    const int pi = g.trip[i - 1];
    if (pi == i) w[i - 1] = contains(d.sources, i) ? i + n - k : i - k;
    else w[i - 1] = i + ((pi - i) % n + n) % n - k;
  }
  return AffinePermutation(std::move(w));
}

namespace {

bool lex_less(Subset a, Subset b) { return elements(a) < elements(b); }

void check_cluster(const Cluster& c, const AffinePermutation& f, int k, const char* who) {
  const int n = f.n();
  auto fail = [&](const std::string& why) {
    throw std::logic_error(std::string(who) + " for " + f.str() + ": " + why);
  };
  const long want = static_cast<long>(k) * (n - k) + 1 - f.inversions();
  if (static_cast<long>(c.members.size()) != want) fail("wrong size");
  for (std::size_t a = 0; a < c.members.size(); ++a)
    for (std::size_t b = a + 1; b < c.members.size(); ++b)
      if (!is_weakly_separated(c.members[a], c.members[b], n)) fail("not weakly separated");
  for (Subset s : necklace_of(f, k).I)
    if (std::find(c.members.begin(), c.members.end(), s) == c.members.end()) fail("missing necklace element");
}

}  // namespace

const Cluster& cluster_of(const AffinePermutation& f, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, std::string>, Cluster> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(k, f.str());
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  const LeDiagram& d = le_diagram_of(f, k);
  auto g = plabic_graph_of(d);
  if (le_trip_permutation(d) != f) throw std::logic_error("cluster_of: plabic trips do not reproduce " + f.str());
  Cluster c{f.n(), k, g.face_labels.back(), g.face_labels};
  std::sort(c.members.begin(), c.members.end(), lex_less);
  c.members.erase(std::unique(c.members.begin(), c.members.end()), c.members.end());
  check_cluster(c, f, k, "cluster_of");
  return cache.emplace(key, std::move(c)).first->second;
}

Cluster greedy_cluster(const AffinePermutation& f, int k, unsigned long seed) {
  const int n = f.n();
  auto neck = necklace_of(f, k);
  auto pos = positroid_of(f, k);
  Cluster c{n, k, neck.I[0], {}};
  for (Subset s : neck.I)
    if (std::find(c.members.begin(), c.members.end(), s) == c.members.end()) c.members.push_back(s);
  auto order = pos.bases;
  Rng rng(seed);
  rng.shuffle(order);
  for (Subset s : order) {
    if (std::find(c.members.begin(), c.members.end(), s) != c.members.end()) continue;
    bool ok = true;
    for (Subset t : c.members) ok = ok && is_weakly_separated(s, t, n);
    if (ok) c.members.push_back(s);
  }
  std::sort(c.members.begin(), c.members.end(), lex_less);
  // Maximal weakly separated collections inside a positroid are pure, so the
  // size check holds for every greedy order.
  check_cluster(c, f, k, "greedy_cluster");
  return c;
}

}  // namespace twistlab
