#include "twistlab/triang.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "twistlab/rng.hpp"

namespace twistlab {

Z mplane(int a, int b, int c) {
  if (a < 1 || b < 1 || c < 1) throw std::invalid_argument("mplane: need a, b, c >= 1");
  Q p = 1;
  for (int i = 1; i <= a; ++i)
    for (int j = 1; j <= b; ++j)
      for (int l = 1; l <= c; ++l) p *= Q(i + j + l - 1, i + j + l - 2);
  if (p.get_den() != 1) throw std::logic_error("mplane: product formula is not an integer");
  return p.get_num();
}

namespace {
Z binomial(long n, long k) {
  Z r;
  if (k < 0 || k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}
}  // namespace

bool narayana_check(int n, int k) {
  const int l = n - k - 4;
  if (k < 1 || l < 1) throw std::invalid_argument("narayana_check: need k >= 1 and l = n-k-4 >= 1");
  Q rhs(binomial(n - 3, k + 1) * binomial(n - 3, k), Z(n - 3));
  rhs.canonicalize();
  return Q(mplane(k, l, 2)) == rhs;
}

// ------------------------------------------------------- symmetric functions

std::vector<Partition> partitions(int d) {
  std::vector<Partition> out;
  Partition cur;
  auto rec = [&](auto&& self, int rest, int max) -> void {
    if (rest == 0) {
      out.push_back(cur);
      return;
    }
    for (int p = std::min(rest, max); p >= 1; --p) {
      cur.push_back(p);
      self(self, rest - p, p);
      cur.pop_back();
    }
  };
  rec(rec, d, d);
  return out;
}

long kostka(const Partition& shape, const Partition& content) {
  static std::mutex mu;
  static std::map<std::pair<Partition, Partition>, long> memo;
  Partition sh = shape, ct = content;
  while (!sh.empty() && sh.back() == 0) sh.pop_back();
  while (!ct.empty() && ct.back() == 0) ct.pop_back();
  if (std::accumulate(sh.begin(), sh.end(), 0) != std::accumulate(ct.begin(), ct.end(), 0)) return 0;
  if (ct.empty()) return 1;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find({sh, ct});
    if (it != memo.end()) return it->second;
  }
  // The largest entry fills a horizontal strip of size ct.back().
  const int s = ct.back();
  Partition rest_ct(ct.begin(), ct.end() - 1);
  long total = 0;
  Partition nu = sh;
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == sh.size()) {
      if (left == 0) total += kostka(nu, rest_ct);
      return;
    }
    const int lo = i + 1 < sh.size() ? sh[i + 1] : 0;
    for (int v = sh[i]; v >= lo && sh[i] - v <= left; --v) {
      nu[i] = v;
      self(self, i + 1, left - (sh[i] - v));
    }
    nu[i] = sh[i];
  };
  rec(rec, 0, s);
  std::lock_guard<std::mutex> lock(mu);
  memo[{sh, ct}] = total;
  return total;
}

long SymmetricFunctionTruncation::coeff(const Partition& lambda) const {
  auto it = schur.find(lambda);
  return it == schur.end() ? 0 : it->second;
}

Partition rectangle(int rows, int cols) {
  if (rows <= 0 || cols <= 0) return {};
  return Partition(static_cast<std::size_t>(rows), cols);
}

namespace {

struct CyclicallyDecreasing {
  AffinePermutation inv;  // v^{-1}
  int length;
};

const std::vector<CyclicallyDecreasing>& cyclically_decreasing(int n) {
  static std::mutex mu;
  static std::map<int, std::vector<CyclicallyDecreasing>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<CyclicallyDecreasing> out;
  for (std::uint32_t a = 1; a + 1 < (1u << n); ++a) {
    // Residue 0..n-1 in bit i. Runs start right after a residue outside A;
    // within a run i, i+1, …, i+t the word is s_{i+t} ⋯ s_{i+1} s_i.
    int start = 0;
    while ((a >> start) & 1u) ++start;
    auto v = AffinePermutation::identity(n);
    for (int step = 1; step <= n; ++step) {
      const int i = (start + step) % n;
      if (!((a >> i) & 1u)) continue;
      // s_i is applied before the generators already placed for this run.
      v = compose(transposition(n, i, i + 1), v);
    }
    if (v.inversions() != std::popcount(a)) throw std::logic_error("cyclically decreasing word not reduced");
    out.push_back({v.inverse(), std::popcount(a)});
  }
  return cache.emplace(n, std::move(out)).first->second;
}

using SeqCounts = std::map<std::vector<int>, long>;

const SeqCounts& factorization_counts(const AffinePermutation& f) {
  static std::mutex mu;
  static std::map<std::vector<long>, SeqCounts> memo;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(f.window());
    if (it != memo.end()) return it->second;
  }
  SeqCounts out;
  const long inv = f.inversions();
  if (inv == 0) {
    out[{}] = 1;
  } else {
    for (const auto& cd : cyclically_decreasing(f.n())) {
      if (cd.length > inv) continue;
      auto g = compose(cd.inv, f);
      if (g.inversions() != inv - cd.length) continue;
      for (const auto& [seq, c] : factorization_counts(g)) {
        std::vector<int> s{cd.length};
        s.insert(s.end(), seq.begin(), seq.end());
        out[s] += c;
      }
    }
  }
  std::lock_guard<std::mutex> lock(mu);
  return memo.emplace(f.window(), std::move(out)).first->second;
}

}  // namespace

const SymmetricFunctionTruncation& affine_stanley(const AffinePermutation& f) {
  static std::mutex mu;
  static std::map<std::vector<long>, SymmetricFunctionTruncation> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(f.window());
    if (it != cache.end()) return it->second;
  }
  if (f.sum_shift() != 0) throw std::invalid_argument("affine_stanley: " + f.str() + " is not in the affine symmetric group");
  SymmetricFunctionTruncation sf;
  sf.degree = f.inversions();
  const auto& counts = factorization_counts(f);
  for (const auto& [seq, c] : counts) {
    Partition mu(seq.begin(), seq.end());
    std::sort(mu.rbegin(), mu.rend());
    auto it = sf.monomial.find(mu);
    if (it == sf.monomial.end()) sf.monomial[mu] = c;
    else if (it->second != c)
      throw std::logic_error("affine_stanley: coefficients of " + f.str() + " are not symmetric");
  }
  // Every rearrangement of every partition must occur with the same count.
  for (const auto& [mu, c] : sf.monomial) {
    std::vector<int> perm(mu.begin(), mu.end());
    std::sort(perm.begin(), perm.end());
    do {
      auto it = counts.find(perm);
      if (it == counts.end() || it->second != c)
        throw std::logic_error("affine_stanley: coefficients of " + f.str() + " are not symmetric");
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // a_μ = Σ_λ c_λ K_{λμ}; K is unitriangular for dominance, and lexicographic
  // decreasing order refines it.
  for (const auto& lambda : partitions(static_cast<int>(sf.degree))) {
    auto it = sf.monomial.find(lambda);
    long c = it == sf.monomial.end() ? 0 : it->second;
    for (const auto& [nu, cn] : sf.schur) c -= cn * kostka(nu, lambda);
    // Affine Stanley functions need not be Schur positive, so c may be negative.
    if (c != 0) sf.schur[lambda] = c;
  }
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(f.window(), std::move(sf)).first->second;
}

long affine_stanley_coeff(const AffinePermutation& f, const Partition& lambda) {
  const auto& sf = affine_stanley(f);
  if (std::accumulate(lambda.begin(), lambda.end(), 0L) != sf.degree) return 0;
  return sf.coeff(lambda);
}

std::vector<AffinePermutation> candidate_cells(int n, int k, int m) {
  const int l = n - k - m;
  if (m < 0 || m % 2 != 0 || l < 0 || k < 0) throw std::invalid_argument("candidate_cells: need m even and k+l+m = n");
  std::vector<AffinePermutation> out;
  for (auto& f : enumerate_bounded(n, k, l, static_cast<long>(k) * l))
    if (affine_stanley_coeff(f, rectangle(k, l)) == 1) out.push_back(std::move(f));
  return out;
}

// --------------------------------------------------------------- hitting sets

std::string Triangulation::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + cells[i].str();
  return s + "}";
}

std::vector<std::vector<int>> exact_hitting_sets(int num_cells, const std::vector<std::vector<int>>& claim_sets) {
  std::vector<std::vector<int>> sets = claim_sets;
  for (auto& s : sets) std::sort(s.begin(), s.end());
  std::sort(sets.begin(), sets.end());
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::vector<int>> out;
  for (const auto& s : sets)
    if (s.empty()) return out;
  std::vector<std::vector<int>> by_cell(num_cells);
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (int c : sets[i]) by_cell[c].push_back(static_cast<int>(i));

  enum : char { Free, Chosen, Excluded };
  std::vector<char> state(num_cells, Free);
  std::vector<char> covered(sets.size(), 0);
  std::vector<int> chosen;
  auto rec = [&](auto&& self) -> void {
    int best = -1, best_free = 1 << 30;
    for (std::size_t i = 0; i < sets.size(); ++i) {
      if (covered[i]) continue;
      int fr = 0;
      for (int c : sets[i]) fr += state[c] == Free;
      if (fr < best_free) best_free = fr, best = static_cast<int>(i);
      if (fr == 0) return;
    }
    if (best < 0) {
      auto t = chosen;
      std::sort(t.begin(), t.end());
      out.push_back(std::move(t));
      return;
    }
    for (int c : sets[best]) {
      if (state[c] != Free) continue;
      auto saved_state = state;
      auto saved_cov = covered;
      state[c] = Chosen;
      chosen.push_back(c);
      for (int s : by_cell[c]) {
        covered[s] = 1;
        for (int d : sets[s])
          if (state[d] == Free) state[d] = Excluded;
      }
      self(self);
      chosen.pop_back();
      state = std::move(saved_state);
      covered = std::move(saved_cov);
    }
  };
  rec(rec);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<std::vector<int>> claim_indices(const std::vector<ClaimSet>& samples,
                                            const std::vector<AffinePermutation>& cells) {
  std::map<std::vector<long>, int> index;
  for (std::size_t i = 0; i < cells.size(); ++i) index[cells[i].window()] = static_cast<int>(i);
  std::vector<std::vector<int>> out;
  for (const auto& s : samples) {
    std::vector<int> c;
    for (const auto& f : s.claimed) c.push_back(index.at(f.window()));
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Triangulation> to_triangulations(const std::vector<std::vector<int>>& sets,
                                             const std::vector<AffinePermutation>& cells, int n, int k, int m) {
  std::vector<Triangulation> out;
  for (const auto& s : sets) {
    Triangulation t{n, k, m, {}};
    for (int c : s) t.cells.push_back(cells[c]);
    std::sort(t.cells.begin(), t.cells.end());
    out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Triangulation> enumerate_triangulations(const ClaimTable& table) {
  if (table.unresolved() != 0)
    throw std::runtime_error("enumerate_triangulations: claim table has " + std::to_string(table.unresolved()) +
                             " unresolved solver verdicts");
  auto sets = exact_hitting_sets(static_cast<int>(table.candidates.size()), claim_indices(table.samples, table.candidates));
  return to_triangulations(sets, table.candidates, table.n, table.k, table.m);
}

TriangulationRun enumerate_triangulations(int n, int k, int m, const std::vector<AffinePermutation>& candidates,
                                          std::uint64_t seed, std::size_t initial, int max_rounds) {
  TriangulationRun run;
  std::size_t count = std::max<std::size_t>(initial, 4 * candidates.size());
  run.table = claim_table(n, k, m, candidates, count, seed);
  std::vector<Triangulation> prev;
  for (int round = 0; round < max_rounds; ++round) {
    if (round > 0) extend_claim_table(run.table, count);
    run.unresolved = run.table.unresolved();
    if (run.unresolved != 0) break;
    auto cur = enumerate_triangulations(run.table);
    run.sample_counts.push_back(count);
    run.found_counts.push_back(cur.size());
    if (round > 0 && cur == prev) {
      run.stable = true;
      run.triangulations = std::move(cur);
      return run;
    }
    prev = std::move(cur);
    count *= 2;
  }
  run.triangulations = std::move(prev);
  return run;
}

Triangulation parity_dual(const Triangulation& t, std::uint64_t seed, std::size_t samples) {
  const int l = t.n - t.k - t.m;
  Triangulation d{t.n, l, t.m, {}};
  for (const auto& f : t.cells) d.cells.push_back(f.inverse());
  std::sort(d.cells.begin(), d.cells.end());
  for (const auto& f : d.cells)
    if (!f.in_class(l, t.k) || f.inversions() != static_cast<long>(t.k) * l)
      throw std::logic_error("parity_dual: " + f.str() + " is not an (n,l,m) candidate");
  auto table = claim_table(t.n, l, t.m, d.cells, samples, seed);
  for (std::size_t i = 0; i < table.samples.size(); ++i) {
    const auto& s = table.samples[i];
    if (s.unresolved != 0 || s.claimed.size() != 1)
      throw std::logic_error("parity_dual: the inverse collection of " + t.str() + " hits sample " + std::to_string(i) +
                             " " + std::to_string(s.claimed.size()) + " times");
  }
  return d;
}

// ----------------------------------------------------------------- flips

int image_dimension(const AffinePermutation& g, int k, const CyclicMatrix& z, std::uint64_t seed) {
  Rng rng(seed);
  const int d = cell_dimension(g, k);
  std::vector<Jet> params;
  for (int i = 0; i < d; ++i) params.push_back(Jet::variable(rng.positive_rational(97), i, d));
  auto v = parametrize_cell_jet(g, k, params);
  JetMatrix y = v.m * lift(z.m.transpose());
  std::vector<std::size_t> rs, head, tail;
  for (int i = 0; i < k; ++i) rs.push_back(i), head.push_back(i);
  for (std::size_t j = k; j < y.cols(); ++j) tail.push_back(j);
  JetMatrix chart;
  try {
    chart = solve(y.submatrix(rs, head), y.submatrix(rs, tail));
  } catch (const SingularMatrix&) {
    return -1;
  }
  QMatrix jac(chart.rows() * chart.cols(), d);
  for (std::size_t i = 0; i < chart.rows(); ++i)
    for (std::size_t j = 0; j < chart.cols(); ++j)
      for (int p = 0; p < d; ++p) jac(i * chart.cols() + j, p) = chart(i, j).partial(p);
  return static_cast<int>(rank(jac));
}

bool FlipGraph::connected() const {
  if (vertices.empty()) return true;
  std::vector<std::vector<int>> adj(vertices.size());
  for (const auto& e : edges) adj[e.a].push_back(e.b), adj[e.b].push_back(e.a);
  std::vector<char> seen(vertices.size(), 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  std::size_t count = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int w : adj[v])
      if (!seen[w]) seen[w] = 1, ++count, stack.push_back(w);
  }
  return count == vertices.size();
}

std::string FlipGraph::dot() const {
  std::ostringstream os;
  os << "graph {\n";
  for (std::size_t i = 0; i < vertices.size(); ++i)
    os << "  \"T" << i + 1 << "\" [cells=\"" << vertices[i].str() << "\"];\n";
  for (const auto& e : edges)
    os << "  \"T" << e.a + 1 << "\" -- \"T" << e.b + 1 << "\" [witness=\"" << e.witness.str() << "\"];\n";
  os << "}\n";
  return os.str();
}

FlipGraph flip_graph(const std::vector<Triangulation>& triangulations, int n, int k, int m, const CyclicMatrix& z,
                     std::uint64_t seed) {
  const int l = n - k - m;
  FlipGraph fg;
  fg.vertices = triangulations;
  std::sort(fg.vertices.begin(), fg.vertices.end());
  std::map<std::vector<AffinePermutation>, int> index;
  for (std::size_t i = 0; i < fg.vertices.size(); ++i) index[fg.vertices[i].cells] = static_cast<int>(i);
  std::set<std::vector<long>> degree_one;
  for (const auto& f : candidate_cells(n, k, m)) degree_one.insert(f.window());

  std::set<std::pair<int, int>> seen_edges;
  std::uint64_t gi = 0;
  for (const auto& g : enumerate_bounded(n, k, l, static_cast<long>(k) * l - 1)) {
    const std::uint64_t gseed = derive_seed(seed, gi++);
    if (image_dimension(g, k, z, gseed) != k * m) continue;
    LocalTriangulations lt{g, {}, {}};
    for (const auto& h : covers_up(g))
      if (h.in_class(k, l) && degree_one.count(h.window())) lt.boundary.push_back(h);
    std::sort(lt.boundary.begin(), lt.boundary.end());
    lt.boundary.erase(std::unique(lt.boundary.begin(), lt.boundary.end()), lt.boundary.end());

    // Fibers over Z(Π_g), sampled until two rounds agree.
    std::vector<ClaimSet> samples;
    std::vector<std::vector<int>> prev;
    std::size_t count = std::max<std::size_t>(16, 4 * lt.boundary.size());
    long unresolved = 0;
    for (int round = 0; round < 10; ++round) {
      for (std::size_t i = samples.size(); i < count; ++i) {
        samples.push_back(claims(fiber_setup(sample_in_cell(g, k, gseed, i + 1), z), lt.boundary));
        unresolved += samples.back().unresolved;
      }
      auto cur = exact_hitting_sets(static_cast<int>(lt.boundary.size()), claim_indices(samples, lt.boundary));
      if (round > 0 && cur == prev) break;
      prev = std::move(cur);
      count *= 2;
    }
    for (const auto& s : prev) {
      std::vector<AffinePermutation> cells;
      for (int c : s) cells.push_back(lt.boundary[c]);
      lt.local.push_back(std::move(cells));
    }
    if (unresolved != 0) fg.anomalies.push_back(g.str() + ": " + std::to_string(unresolved) + " unresolved fibers");
    if (lt.local.size() != 2) {
      fg.anomalies.push_back(g.str() + ": " + std::to_string(lt.local.size()) + " local triangulations");
    } else {
      for (int side = 0; side < 2; ++side) {
        const auto& from = lt.local[side];
        const auto& to = lt.local[1 - side];
        for (std::size_t a = 0; a < fg.vertices.size(); ++a) {
          const auto& cells = fg.vertices[a].cells;
          if (!std::includes(cells.begin(), cells.end(), from.begin(), from.end())) continue;
          std::vector<AffinePermutation> other;
          std::set_difference(cells.begin(), cells.end(), from.begin(), from.end(), std::back_inserter(other));
          other.insert(other.end(), to.begin(), to.end());
          std::sort(other.begin(), other.end());
          auto it = index.find(other);
          if (it == index.end()) continue;
          int x = static_cast<int>(a), y = it->second;
          if (x > y) std::swap(x, y);
          if (seen_edges.insert({x, y}).second) fg.edges.push_back({x, y, g});
        }
      }
    }
    fg.witnesses.push_back(std::move(lt));
  }
  std::sort(fg.edges.begin(), fg.edges.end(),
            [](const FlipEdge& a, const FlipEdge& b) { return std::tie(a.a, a.b) < std::tie(b.a, b.b); });
  return fg;
}

}  // namespace twistlab
