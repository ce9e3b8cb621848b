#include "twistlab/fiber.hpp"

#include <algorithm>
#include <mutex>

#include "twistlab/rng.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

CyclicMatrix sample_positive(int k, int n, std::uint64_t seed) {
  if (k < 1 || k > n) throw std::invalid_argument("sample_positive: need 1 <= k <= n");
  Rng rng(seed);
  std::vector<Q> t(n);
  Q acc = 0;
  for (auto& x : t) x = acc += rng.positive_rational();
  QMatrix m(k, n);
  for (int j = 0; j < n; ++j) {
    Q p = 1;
    for (int i = 0; i < k; ++i, p *= t[j]) m(i, j) = p;
  }
  CyclicMatrix z(std::move(m), k - 1);
  auto pv = plucker(z);
  for (const auto& c : pv.coords)
    if (c <= 0) throw std::logic_error("sample_positive: moment curve minor not positive");
  return z;
}

QMatrix zmap(const QMatrix& v, const QMatrix& z) {
  QMatrix y = v * z.transpose();
  if (rank(y) != v.rows()) throw RankCollapse("zmap: V·Zᵗ has rank below k");
  return y;
}

std::vector<Q> boundary_sign_profile(const QMatrix& y, const CyclicMatrix& z) {
  const std::size_t k = y.rows(), r = z.rows();
  if (y.cols() != r || r < k) throw std::invalid_argument("boundary_sign_profile: shape mismatch");
  const std::size_t m = r - k;
  std::vector<Q> out;
  for (long j = 1; j <= z.n(); ++j) {
    QMatrix a(r, r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t c = 0; c < k; ++c) a(i, c) = y(c, i);
      for (std::size_t c = 0; c < m; ++c) a(i, k + c) = z.at(i, j + static_cast<long>(c));
    }
    out.push_back(det(a));
  }
  return out;
}

std::vector<int> signs(const std::vector<Q>& xs) {
  std::vector<int> s;
  for (const auto& x : xs) s.push_back(sign(x));
  return s;
}

FiberSetup fiber_setup(const CyclicMatrix& v, const CyclicMatrix& z) {
  QMatrix w = orthogonal_complement(z.m);
  CyclicMatrix wc(std::move(w), static_cast<int>(v.rows()) - 1);
  if (tnn_membership(z) == TnnClass::TotallyPositive && tnn_membership(alt(wc)) != TnnClass::TotallyPositive)
    throw std::logic_error("fiber_setup: alt(ker Z) is not totally positive");
  return fiber_setup(v, z, wc);
}

FiberSetup fiber_setup(const CyclicMatrix& v, const CyclicMatrix& z, const CyclicMatrix& w) {
  FiberSetup s;
  s.n = v.n();
  s.k = static_cast<int>(v.rows());
  s.l = static_cast<int>(w.rows());
  s.m = static_cast<int>(z.rows()) - s.k;
  if (z.n() != s.n || w.n() != s.n || s.k + s.l + s.m != s.n || s.m < 0)
    throw std::invalid_argument("fiber_setup: inconsistent shapes");
  if (!(w.m * z.m.transpose() == QMatrix(w.rows(), z.rows())))
    throw std::invalid_argument("fiber_setup: W is not in the kernel of Z");
  s.V = CyclicMatrix(v.m, s.k - 1);
  s.Z = z;
  s.W = CyclicMatrix(w.m, s.k - 1);
  QMatrix u = vstack(v.m, w.m);
  if (rank(u) != static_cast<std::size_t>(s.k + s.l))
    throw RankCollapse("fiber_setup: V·Zᵗ has rank below k");
  s.row_sets = k_subsets(s.k + s.l, s.k);
  s.col_sets = k_subsets(s.n, s.k);
  s.cb.assign(s.col_sets.size(), std::vector<Q>(s.row_sets.size()));
  for (std::size_t a = 0; a < s.col_sets.size(); ++a) {
    std::vector<std::size_t> cs;
    for (int x : elements(s.col_sets[a])) cs.push_back(static_cast<std::size_t>(x - 1));
    for (std::size_t b = 0; b < s.row_sets.size(); ++b) {
      std::vector<std::size_t> rs;
      for (int x : elements(s.row_sets[b])) rs.push_back(static_cast<std::size_t>(x - 1));
      s.cb[a][b] = det(u.submatrix(rs, cs));
    }
  }
  return s;
}

const char* to_string(FiberStatus s) {
  return s == FiberStatus::ExactLinear ? "ExactLinear" : "ExactQuadratic";
}

const char* to_string(FiberError e) {
  switch (e) {
    case FiberError::None: return "None";
    case FiberError::NoSolution: return "NoSolution";
    case FiberError::NoRealSolution: return "NoRealSolution";
    case FiberError::Ambiguous: return "Ambiguous";
    case FiberError::Unsupported: return "Unsupported";
    case FiberError::VerificationFailed: return "VerificationFailed";
  }
  return "?";
}

namespace {

const Positroid& cached_positroid(const AffinePermutation& f, int k) {
  static std::mutex mu;
  static std::map<std::pair<int, std::string>, Positroid> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(k, f.str());
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, positroid_of(f, k)).first;
  return it->second;
}

// p12 p34 - p13 p24 + p14 p23 in lexicographic coordinates.
Q grassmann_quadric(const std::vector<Q>& p) { return p[0] * p[5] - p[1] * p[4] + p[2] * p[3]; }

bool rational_sqrt(const Q& x, Q& root) {
  if (x < 0) return false;
  Z a = x.get_num(), b = x.get_den();
  if (!mpz_perfect_square_p(a.get_mpz_t()) || !mpz_perfect_square_p(b.get_mpz_t())) return false;
  root = Q(sqrt(a), sqrt(b));
  root.canonicalize();
  return true;
}

std::vector<Q> combine(const Q& s, const std::vector<Q>& u, const Q& t, const std::vector<Q>& v) {
  std::vector<Q> p(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) p[i] = s * u[i] + t * v[i];
  return p;
}

// Exact points of Gr(2,4) on the projective line spanned by u and v.
FiberError quadric_points(const std::vector<Q>& u, const std::vector<Q>& v, std::vector<std::vector<Q>>& out,
                          std::string& detail) {
  const Q a = grassmann_quadric(u), c = grassmann_quadric(v);
  const Q b = grassmann_quadric(combine(1, u, 1, v)) - a - c;
  // a s² + b s t + c t² = 0 on [s : t].
  if (a == 0 && b == 0 && c == 0) {
    detail = "pencil lies in the Grassmannian";
    return FiberError::Ambiguous;
  }
  if (a == 0) {
    out.push_back(u);
    if (b != 0) out.push_back(combine(-c, u, b, v));
    return FiberError::None;
  }
  const Q disc = b * b - 4 * a * c;
  if (disc < 0) {
    detail = "negative discriminant";
    return FiberError::NoRealSolution;
  }
  Q r;
  if (!rational_sqrt(disc, r)) {
    detail = "irrational solutions";
    return FiberError::Ambiguous;
  }
  out.push_back(combine(-b + r, u, 2 * a, v));
  if (r != 0) out.push_back(combine(-b - r, u, 2 * a, v));
  return FiberError::None;
}

}  // namespace

FiberResult fiber_solve(const AffinePermutation& f, const FiberSetup& s) {
  const int k = s.k, l = s.l;
  if (f.n() != s.n || !f.in_class(k, l) || f.sum_shift() != 0 || f.inversions() != static_cast<long>(k) * l)
    throw std::invalid_argument("fiber_solve: " + f.str() + " is not a candidate cell for this fiber");
  const Positroid& pos = cached_positroid(f, k);
  FiberResult res;

  std::vector<std::size_t> zero_rows;
  for (std::size_t a = 0; a < s.col_sets.size(); ++a)
    if (!pos.contains(s.col_sets[a])) zero_rows.push_back(a);
  QMatrix e(zero_rows.size(), s.row_sets.size());
  for (std::size_t i = 0; i < zero_rows.size(); ++i)
    for (std::size_t b = 0; b < s.row_sets.size(); ++b) e(i, b) = s.cb[zero_rows[i]][b];
  auto ns = nullspace(e);

  std::vector<std::vector<Q>> pts;
  FiberStatus status = FiberStatus::ExactLinear;
  if (ns.empty()) {
    res.error = FiberError::NoSolution;
    res.detail = "vanishing system has only the trivial solution";
    return res;
  }
  if (ns.size() == 1) {
    pts.push_back(ns[0]);
  } else if (ns.size() == 2 && k == 2 && l == 2) {
    status = FiberStatus::ExactQuadratic;
    res.error = quadric_points(ns[0], ns[1], pts, res.detail);
    if (res.error != FiberError::None) return res;
  } else {
    res.error = (k == 1 || l == 1) ? FiberError::Ambiguous : FiberError::Unsupported;
    res.detail = "solution space of dimension " + std::to_string(ns.size());
    return res;
  }

  // Chart p_{[k]} != 0, and p must be the Plücker vector of [I | A].
  std::vector<QMatrix> sols;
  for (auto& p : pts) {
    if (p[0] == 0) continue;
    QMatrix a(k, l);
    for (int i = 1; i <= k; ++i)
      for (int j = 1; j <= l; ++j) {
        Subset sset = (cyclic_interval(1, k + 1, k + l) & ~singleton(i)) | singleton(k + j);
        auto idx = std::find(s.row_sets.begin(), s.row_sets.end(), sset) - s.row_sets.begin();
        a(i - 1, j - 1) = Q(neg1pow(k - i)) * p[idx] / p[0];
      }
    QMatrix x(k, k + l);
    for (int i = 0; i < k; ++i) {
      x(i, i) = 1;
      for (int j = 0; j < l; ++j) x(i, k + j) = a(i, j);
    }
    auto px = plucker(x);
    bool on_grassmannian = true;
    for (std::size_t b = 0; b < s.row_sets.size() && on_grassmannian; ++b)
      on_grassmannian = px.coords[b] * p[0] == p[b];
    if (on_grassmannian) sols.push_back(std::move(a));
  }
  if (sols.empty()) {
    res.error = FiberError::NoSolution;
    res.detail = "no solution in the chart of the fiber";
    return res;
  }
  if (sols.size() > 1) {
    res.error = FiberError::Ambiguous;
    res.detail = "two distinct exact solutions";
    return res;
  }

  FiberPoint fp{sols[0], f, status, CyclicMatrix(s.V.m + sols[0] * s.W.m, k - 1)};
  auto pv = plucker(fp.Vp);
  int sgn = 0;
  bool claimed = true;
  for (std::size_t a = 0; a < pv.sets.size(); ++a) {
    const int c = sign(pv.coords[a]);
    if (!pos.contains(pv.sets[a])) {
      if (c != 0) {
        res.error = FiberError::VerificationFailed;
        res.detail = "minor " + subset_label(pv.sets[a], s.n) + " does not vanish";
        return res;
      }
      continue;
    }
    if (c == 0 || (sgn != 0 && c != sgn)) claimed = false;
    if (sgn == 0) sgn = c;
  }
  if (claimed && cell_of(fp.Vp) != f) {
    res.error = FiberError::VerificationFailed;
    res.detail = "fiber point classified into a different cell";
    return res;
  }
  res.claimed = claimed;
  res.point = std::move(fp);
  return res;
}

ClaimSet claims(const FiberSetup& s, const std::vector<AffinePermutation>& candidates) {
  ClaimSet c;
  for (const auto& f : candidates) {
    auto r = fiber_solve(f, s);
    if (r.claimed) c.claimed.push_back(f);
    if (r.unresolved()) {
      ++c.unresolved;
      c.diagnostics[f.str()] = std::string(to_string(r.error)) + ": " + r.detail;
    }
  }
  std::sort(c.claimed.begin(), c.claimed.end());
  return c;
}

long ClaimTable::unresolved() const {
  long u = 0;
  for (const auto& s : samples) u += s.unresolved;
  return u;
}

namespace {
// Positive weights spread over many orders of magnitude, so that images of
// the sample reach every chamber of the cell arrangement.
std::vector<Q> spread_params(Rng& rng, int d) {
  std::vector<Q> params(d);
  for (auto& p : params) {
    p = rng.positive_rational(97);
    const long e = rng.uniform(-8, 8);
    p *= e >= 0 ? Q(Z(1) << e) : Q(1, Z(1) << -e);
  }
  return params;
}
}  // namespace

CyclicMatrix sample_top_cell(int k, int n, std::uint64_t seed, std::uint64_t index) {
  Rng rng(derive_seed(seed, index));
  auto top = AffinePermutation::identity(n);
  return parametrize_cell(top, k, spread_params(rng, cell_dimension(top, k)));
}

CyclicMatrix sample_in_cell(const AffinePermutation& f, int k, std::uint64_t seed, std::uint64_t index) {
  Rng rng(derive_seed(seed, index));
  return parametrize_cell(f, k, spread_params(rng, cell_dimension(f, k)));
}

CyclicMatrix ClaimTable::sample_point(std::size_t i) const {
  if (i % 2 == 0 || candidates.empty()) return sample_top_cell(k, n, seed, i);
  return sample_in_cell(candidates[(i / 2) % candidates.size()], k, seed, i);
}

ClaimTable claim_table(int n, int k, int m, const std::vector<AffinePermutation>& candidates, std::size_t samples,
                       std::uint64_t seed) {
  ClaimTable t;
  t.n = n;
  t.k = k;
  t.m = m;
  t.seed = seed;
  t.Z = sample_positive(k + m, n, derive_seed(seed, ~std::uint64_t(0)));
  t.candidates = candidates;
  extend_claim_table(t, samples);
  return t;
}

void extend_claim_table(ClaimTable& t, std::size_t samples) {
  for (std::size_t i = t.samples.size(); i < samples; ++i)
    t.samples.push_back(claims(fiber_setup(t.sample_point(i), t.Z), t.candidates));
}

FiberTwistReport fiber_twist_check(const CyclicMatrix& v, const CyclicMatrix& z, int shifts, std::uint64_t seed) {
  auto s = fiber_setup(v, z);
  auto base = stacked_twist(s.V, s.W);
  FiberTwistReport rep;
  Rng rng(seed);
  auto is_tnn = [](const CyclicMatrix& x) { return tnn_membership(x) != TnnClass::NotTNN; };
  for (int t = 0; t < shifts; ++t) {
    QMatrix a(s.k, s.l);
    // Alternate between small shifts (inside the fiber polytope) and large ones.
    const Q scale = (t % 2 == 0) ? Q(1, 100) : Q(1);
    if (t > 0)
      for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = rng.rational(5) * scale;
    CyclicMatrix vp(s.V.m + a * s.W.m, s.k - 1);
    auto tw = stacked_twist_unchecked(vp, s.W);
    ++rep.checked;
    if (!(tw.Wt.m == base.Wt.m)) rep.violations.push_back("shift " + std::to_string(t) + ": W̃ changed");
    if (!(tw.Vt.m == base.Vt.m - a.transpose() * base.Wt.m))
      rep.violations.push_back("shift " + std::to_string(t) + ": Ṽ' != Ṽ - Aᵗ W̃");
    const bool l = is_tnn(vp), r = is_tnn(tw.Vt);
    if (l != r) rep.violations.push_back("shift " + std::to_string(t) + ": TNN classification differs");
    else if (l) ++rep.tnn_agree;
  }
  return rep;
}

Cyclic<Jet> fiber_point_jet(const AffinePermutation& f, const FiberSetup& s, const QMatrix& a0,
                            const Cyclic<Jet>& v_jet) {
  const int k = s.k, l = s.l;
  const std::size_t kl = static_cast<std::size_t>(k) * l;
  if (!(values(v_jet.m) == s.V.m)) throw std::invalid_argument("fiber_point_jet: jet is not based at V");
  const Positroid& pos = cached_positroid(f, k);
  std::size_t width = 0;
  for (std::size_t i = 0; i < v_jet.rows(); ++i)
    for (std::size_t j = 0; j < v_jet.m.cols(); ++j) width = std::max(width, v_jet.m(i, j).width());

  // Jacobian of the vanishing minors in A, at A0.
  JetMatrix a_var(k, l);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < l; ++j) a_var(i, j) = Jet::variable(a0(i, j), static_cast<std::size_t>(i * l + j), kl);
  JetMatrix vp_a = lift(s.V.m) + a_var * lift(s.W.m);
  JetMatrix vp_x = v_jet.m + lift(a0 * s.W.m);

  std::vector<std::vector<Q>> jac_rows, fx_rows;
  for (Subset set : s.col_sets) {
    if (pos.contains(set)) continue;
    std::vector<std::size_t> rs, cs;
    for (int i = 0; i < k; ++i) rs.push_back(static_cast<std::size_t>(i));
    for (int x : elements(set)) cs.push_back(static_cast<std::size_t>(x - 1));
    Jet da = det(vp_a.submatrix(rs, cs));
    if (da.v != 0) throw std::invalid_argument("fiber_point_jet: A0 is not a fiber point of " + f.str());
    std::vector<Q> row(kl);
    for (std::size_t i = 0; i < kl; ++i) row[i] = da.partial(i);
    // Keep the row if it raises the rank.
    QMatrix trial(jac_rows.size() + 1, kl);
    for (std::size_t r = 0; r < jac_rows.size(); ++r)
      for (std::size_t c = 0; c < kl; ++c) trial(r, c) = jac_rows[r][c];
    for (std::size_t c = 0; c < kl; ++c) trial(jac_rows.size(), c) = row[c];
    if (rank(trial) <= jac_rows.size()) continue;
    jac_rows.push_back(row);
    Jet dx = det(vp_x.submatrix(rs, cs));
    std::vector<Q> xr(width);
    for (std::size_t i = 0; i < width; ++i) xr[i] = dx.partial(i);
    fx_rows.push_back(xr);
    if (jac_rows.size() == kl) break;
  }
  if (jac_rows.size() != kl) throw std::domain_error("fiber_point_jet: Jacobian of the fiber equations is singular");
  QMatrix j(kl, kl), b(kl, width);
  for (std::size_t r = 0; r < kl; ++r) {
    for (std::size_t c = 0; c < kl; ++c) j(r, c) = jac_rows[r][c];
    for (std::size_t c = 0; c < width; ++c) b(r, c) = -fx_rows[r][c];
  }
  QMatrix da = solve(j, b);  // row i*l+j: dA_ij along the frame
  JetMatrix a(k, l);
  for (int i = 0; i < k; ++i)
    for (int jj = 0; jj < l; ++jj) {
      std::vector<Q> d(width);
      for (std::size_t c = 0; c < width; ++c) d[c] = da(static_cast<std::size_t>(i * l + jj), c);
      a(i, jj) = Jet(a0(i, jj), std::move(d));
    }
  return Cyclic<Jet>(v_jet.m + a * lift(s.W.m), k - 1);
}

}  // namespace twistlab
