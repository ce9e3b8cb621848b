#include "twistlab/forms.hpp"

#include <stdexcept>

#include "twistlab/rng.hpp"
#include "twistlab/twist.hpp"

namespace twistlab {

namespace {

std::string subset_str(Subset s) {
  std::string out;
  for (int x : elements(s)) out += std::to_string(x) + (x >= 10 ? "," : "");
  return out;
}

std::string describe(const Cluster& c) { return "base " + subset_str(c.base); }

std::vector<Q> random_positive(Rng& rng, int d) {
  std::vector<Q> p(static_cast<std::size_t>(d));
  for (auto& x : p) x = rng.positive_rational();
  return p;
}

Cyclic<Jet> cell_jet(const AffinePermutation& f, int k, const std::vector<Jet>& all, std::size_t from, int count) {
  std::vector<Jet> p(all.begin() + static_cast<long>(from), all.begin() + static_cast<long>(from) + count);
  return parametrize_cell_jet(f, k, p);
}

void append(std::vector<std::vector<Q>>& rows, std::vector<std::vector<Q>> more) {
  for (auto& r : more) rows.push_back(std::move(r));
}

void compare(PullbackReport& rep, const Q& a, const Q& b, const std::string& where) {
  ++rep.checked;
  if (a == 0 || b == 0) {
    rep.sign_log.push_back(0);
    rep.violations.push_back(where + ": zero form value");
  } else if (a == b) {
    rep.sign_log.push_back(1);
    ++rep.same_sign;
  } else if (a == -b) {
    rep.sign_log.push_back(-1);
    ++rep.opposite_sign;
  } else {
    rep.sign_log.push_back(0);
    rep.violations.push_back(where + ": " + a.get_str() + " vs " + b.get_str());
  }
}

}  // namespace

TangentFrame coordinate_frame(std::size_t d) {
  TangentFrame f(d, std::vector<Q>(d, Q(0)));
  for (std::size_t i = 0; i < d; ++i) f[i][i] = 1;
  return f;
}

Q frame_det(const TangentFrame& frame) {
  QMatrix m(frame.size(), frame.size());
  for (std::size_t j = 0; j < frame.size(); ++j) {
    if (frame[j].size() != frame.size()) throw std::invalid_argument("frame is not square");
    for (std::size_t i = 0; i < frame.size(); ++i) m(j, i) = frame[j][i];
  }
  return det(m);
}

TangentFrame random_frame(std::size_t d, std::uint64_t seed) {
  Rng rng(seed);
  while (true) {
    TangentFrame f(d, std::vector<Q>(d));
    for (auto& v : f)
      for (auto& x : v) x = Q(rng.uniform(-3, 3));
    if (frame_det(f) != 0) return f;
  }
}

std::vector<Jet> frame_jets(const std::vector<Q>& base, const TangentFrame& frame) {
  std::vector<Jet> out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    std::vector<Q> d(frame.size());
    for (std::size_t j = 0; j < frame.size(); ++j) d[j] = frame[j].at(i);
    out.emplace_back(base[i], std::move(d));
  }
  return out;
}

std::vector<std::vector<Q>> dlog_rows(const Cluster& c, const Cyclic<Jet>& x, std::size_t width) {
  const Jet base = x.plucker(c.base);
  if (base.v == 0) throw std::domain_error("cluster base coordinate " + subset_str(c.base) + " vanishes");
  std::vector<std::vector<Q>> rows;
  for (Subset s : c.members) {
    if (s == c.base) continue;
    Jet r = x.plucker(s) / base;
    if (r.v == 0) throw std::domain_error("cluster coordinate " + subset_str(s) + " vanishes");
    std::vector<Q> row(width);
    for (std::size_t j = 0; j < width; ++j) row[j] = r.partial(j) / r.v;
    rows.push_back(std::move(row));
  }
  return rows;
}

Q dlog_det(const std::vector<std::vector<Q>>& rows) {
  QMatrix m(rows.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.size()) throw std::invalid_argument("dlog matrix is not square");
    for (std::size_t j = 0; j < rows.size(); ++j) m(i, j) = rows[i][j];
  }
  return det(m);
}

Q canonical_form_on(const Cluster& c, const Cyclic<Jet>& x, std::size_t width) {
  return dlog_det(dlog_rows(c, x, width));
}

ChartPoint chart_point(const AffinePermutation& f, int k, std::vector<Q> params) {
  return chart_point(f, k, std::move(params), cluster_of(f, k));
}

ChartPoint chart_point(const AffinePermutation& f, int k, std::vector<Q> params, const Cluster& c) {
  if (static_cast<int>(params.size()) != cell_dimension(f, k))
    throw std::invalid_argument("chart_point: expected " + std::to_string(cell_dimension(f, k)) + " parameters");
  for (const auto& p : params)
    if (p <= 0) throw std::invalid_argument("chart_point: parameters must be positive");
  ChartPoint pt{f, k, params, c, parametrize_cell(f, k, params)};
  return pt;
}

FormValue eval_canonical_cell(const ChartPoint& pt, const TangentFrame& frame) {
  const std::size_t d = pt.params.size();
  if (frame.size() != d) throw std::invalid_argument("frame dimension differs from the cell dimension");
  if (frame_det(frame) == 0) throw std::invalid_argument("degenerate frame");
  auto x = parametrize_cell_jet(pt.f, pt.k, frame_jets(pt.params, frame));
  return {canonical_form_on(pt.cluster, x, d), "cell " + pt.f.str() + ", " + describe(pt.cluster) + ", Le chart"};
}

std::pair<Q, Q> stacked_pullback_values(const AffinePermutation& f, const Cyclic<Jet>& v, const Cyclic<Jet>& w,
                                        std::size_t width) {
  const int k = static_cast<int>(v.rows()), l = static_cast<int>(w.rows()), n = v.n();
  const auto top = AffinePermutation::identity(n);
  std::vector<std::vector<Q>> before = dlog_rows(cluster_of(f, k), v, width);
  append(before, dlog_rows(cluster_of(top, l), alt(w), width));
  auto [wt, vt] = stacked_twist_unchecked(v, w);
  std::vector<std::vector<Q>> after = dlog_rows(cluster_of(top, k), alt(wt), width);
  append(after, dlog_rows(cluster_of(f.inverse(), l), vt, width));
  return {dlog_det(before), dlog_det(after)};
}

PullbackReport verify_cell_pullback(const AffinePermutation& f, int k, int l, int samples, std::uint64_t seed) {
  const int n = f.n();
  if (!f.in_class(k, l)) throw std::invalid_argument("verify_cell_pullback: " + f.str() + " is not in the class");
  if ((n - k - l) % 2 != 0 || n - k - l < 0) throw std::invalid_argument("verify_cell_pullback: m must be even");
  const auto top = AffinePermutation::identity(n);
  const int dv = cell_dimension(f, k), dw = cell_dimension(top, l);
  const std::size_t width = static_cast<std::size_t>(dv + dw);
  PullbackReport rep;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    auto jets = frame_jets(random_positive(rng, dv + dw), random_frame(width, rng.below(1u << 30)));
    auto v = cell_jet(f, k, jets, 0, dv);
    auto x = cell_jet(top, l, jets, static_cast<std::size_t>(dv), dw);
    Cyclic<Jet> w(alt(x).m, k - 1);
    auto [a, b] = stacked_pullback_values(f, Cyclic<Jet>(v.m, k - 1), w, width);
    compare(rep, a, b, f.str() + " sample " + std::to_string(s));
  }
  return rep;
}

PullbackReport verify_top_pullback(int k, int l, int n, int samples, std::uint64_t seed) {
  return verify_cell_pullback(AffinePermutation::identity(n), k, l, samples, seed);
}

PullbackReport verify_twist_top_form(int k, int l, int n, int samples, std::uint64_t seed) {
  const int r = k + l;
  const auto top = AffinePermutation::identity(n);
  const int d = cell_dimension(top, r);
  const auto& c = cluster_of(top, r);
  PullbackReport rep;
  for (int s = 0; s < samples; ++s) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(s)));
    auto jets = frame_jets(random_positive(rng, d), random_frame(static_cast<std::size_t>(d), rng.below(1u << 30)));
    Cyclic<Jet> u(parametrize_cell_jet(top, r, jets).m, k - 1);
    auto ut = right_twist(u, k, l);
    compare(rep, canonical_form_on(c, u, d), canonical_form_on(c, ut, d), "sample " + std::to_string(s));
  }
  return rep;
}

QMatrix y_chart_coords(const QMatrix& y) {
  const std::size_t k = y.rows(), cols = y.cols();
  std::vector<std::size_t> rs, lead, rest;
  for (std::size_t i = 0; i < k; ++i) rs.push_back(i);
  for (std::size_t j = 0; j < cols; ++j) (j < k ? lead : rest).push_back(j);
  QMatrix yk = y.submatrix(rs, lead);
  if (det(yk) == 0) throw std::domain_error("Y is outside the chart [I | X]");
  return solve(yk, y.submatrix(rs, rest));
}

FormValue pushforward_eval(const AffinePermutation& f, const CyclicMatrix& z, const QMatrix& y,
                           const TangentFrame& frame, bool require_image) {
  const int k = static_cast<int>(y.rows()), n = z.n();
  const int m = static_cast<int>(z.rows()) - k;
  const std::size_t km = static_cast<std::size_t>(k) * m;
  if (frame.size() != km) throw std::invalid_argument("frame dimension must be k·m");
  for (const Q& a : boundary_sign_profile(y, z))
    if (a == 0) throw std::domain_error("Y lies on a facet hyperplane (pole of the form)");

  QMatrix x0 = y_chart_coords(y);
  QMatrix zt = z.m.transpose();
  QMatrix lift_map = solve(z.m * zt, z.m);  // (Z Zᵗ)^{-1} Z
  std::vector<Q> base;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) base.push_back(x0(i, j));
  auto xs = frame_jets(base, frame);
  JetMatrix yj(k, k + m);
  for (int i = 0; i < k; ++i) {
    yj(i, i) = 1;
    for (int j = 0; j < m; ++j) yj(i, k + j) = xs[static_cast<std::size_t>(i * m + j)];
  }
  JetMatrix vj = yj * lift(lift_map);
  CyclicMatrix v0(values(vj), k - 1);
  (void)n;

  auto setup = fiber_setup(v0, z);
  auto res = fiber_solve(f, setup);
  if (!res.point) throw std::domain_error("no fiber point in " + f.str() + ": " + to_string(res.error));
  if (require_image && !res.claimed) throw std::domain_error("Y is not in the image of the open cell " + f.str());
  auto vp = fiber_point_jet(f, setup, res.point->A, Cyclic<Jet>(vj, k - 1));
  const auto& c = cluster_of(f, k);
  return {canonical_form_on(c, vp, km), "cell " + f.str() + ", " + describe(c) + ", chart [I | X]"};
}

CalibratedTriangulation calibrate(const Triangulation& t, const CyclicMatrix& z, std::uint64_t seed) {
  CalibratedTriangulation ct{t, z, {}};
  const std::size_t km = static_cast<std::size_t>(t.k) * t.m;
  for (const auto& f : t.cells) {
    int sg = 0;
    for (std::uint64_t i = 0; i < 20 && sg == 0; ++i) {
      auto v = sample_in_cell(f, t.k, seed, i);
      try {
        sg = sign(pushforward_eval(f, z, zmap(v.m, z.m), coordinate_frame(km)).value);
      } catch (const std::domain_error&) {
        // resample: the calibration point hit a chart or facet degeneracy
      }
    }
    if (sg == 0) throw std::runtime_error("sign calibration failed for " + f.str());
    ct.signs.push_back(sg);
  }
  return ct;
}

namespace {

Q signed_sum(const CalibratedTriangulation& ct, const QMatrix& y, const TangentFrame& frame) {
  Q total = 0;
  for (std::size_t i = 0; i < ct.T.cells.size(); ++i)
    total += ct.signs[i] * pushforward_eval(ct.T.cells[i], ct.Z, y, frame, false).value;
  return total;
}

// Y lies on a spurious pole of some cell (an interior wall of the
// triangulation) where the sum is still regular. Restrict the sum to the line
// [I | X + tU], reconstruct it as p(t)/q(t) with q(0) = 1 from exact samples,
// and return p(0).
Q limit_along_line(const CalibratedTriangulation& ct, const QMatrix& y, const TangentFrame& frame) {
  const QMatrix x0 = y_chart_coords(y);
  const std::size_t k = x0.rows();
  Rng rng(0x5eed);
  QMatrix u(x0.rows(), x0.cols());
  for (std::size_t i = 0; i < u.rows(); ++i)
    for (std::size_t j = 0; j < u.cols(); ++j) u(i, j) = Q(rng.uniform(-5, 5)) + Q(1, 7);
  std::vector<Q> ts, vs;
  auto sample = [&](const Q& t) {
    QMatrix yt(k, k + x0.cols());
    for (std::size_t i = 0; i < k; ++i) {
      yt(i, i) = 1;
      for (std::size_t j = 0; j < x0.cols(); ++j) yt(i, k + j) = x0(i, j) + t * u(i, j);
    }
    try {
      vs.push_back(signed_sum(ct, yt, frame));
      ts.push_back(t);
    } catch (const std::domain_error&) {
      // another wall or a facet; skip this t
    }
  };
  long next = 1;
  for (std::size_t d = 0; d <= 12; ++d) {
    const std::size_t need = 2 * d + 4;  // 2d+1 to fit, 3 to confirm
    while (ts.size() < need && next < 400) sample(Q(1, 1 + next++));
    if (ts.size() < need) break;
    // Unknowns p_0..p_d, q_1..q_d: p(t_i) - v_i (q(t_i) - 1) = v_i.
    const std::size_t unk = 2 * d + 1;
    QMatrix a(unk, unk), b(unk, 1);
    for (std::size_t i = 0; i < unk; ++i) {
      Q pw = 1;
      for (std::size_t e = 0; e <= d; ++e, pw *= ts[i]) {
        a(i, e) = pw;
        if (e > 0) a(i, d + e) = -vs[i] * pw;
      }
      b(i, 0) = vs[i];
    }
    QMatrix c;
    try {
      c = solve(a, b);
    } catch (const SingularMatrix&) {
      continue;
    }
    auto eval = [&](const Q& t) {
      Q p = 0, q = 0, pw = 1;
      for (std::size_t e = 0; e <= d; ++e, pw *= t) {
        p += c(e, 0) * pw;
        q += (e == 0 ? Q(1) : c(d + e, 0)) * pw;
      }
      return std::pair{p, q};
    };
    bool ok = true;
    for (std::size_t i = unk; i < need && ok; ++i) {
      auto [p, q] = eval(ts[i]);
      ok = q != 0 && p / q == vs[i];
    }
    if (ok) return c(0, 0);
  }
  throw std::domain_error("amplituhedron form: could not resolve the value at a wall");
}

}  // namespace

FormValue amplituhedron_form_eval(const CalibratedTriangulation& ct, const QMatrix& y, const TangentFrame& frame) {
  for (const Q& a : boundary_sign_profile(y, ct.Z))
    if (a == 0) throw std::domain_error("Y lies on a facet hyperplane (pole of the form)");
  FormValue out{Q(0), "sum over " + ct.T.str() + " with calibrated signs"};
  try {
    out.value = signed_sum(ct, y, frame);
  } catch (const std::domain_error&) {
    out.value = limit_along_line(ct, y, frame);
    out.convention += ", continued across an interior wall";
  }
  return out;
}

}  // namespace twistlab
