#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "twistlab/forms.hpp"

using namespace twistlab;
using namespace testutil;

namespace {
// Evaluated eagerly: gmpxx expression templates must not outlive their operands.
Q qabs(const Q& x) { return x < 0 ? Q(-x) : x; }

Cluster gr24_cluster(Subset extra) {
  return Cluster{4, 2, S({1, 2}), {S({1, 2}), S({2, 3}), S({3, 4}), S({1, 4}), extra}};
}

// Row span of [[1, 0, p, q], [0, 1, r, s]] along the coordinate frame.
Cyclic<Jet> gr24_chart(const Q& p, const Q& q, const Q& r, const Q& s) {
  auto x = frame_jets({p, q, r, s}, coordinate_frame(4));
  JetMatrix m(2, 4);
  m(0, 0) = 1, m(1, 1) = 1;
  m(0, 2) = x[0], m(0, 3) = x[1], m(1, 2) = x[2], m(1, 3) = x[3];
  return Cyclic<Jet>(m, 1);
}

Q prod(const std::vector<Q>& xs) {
  Q p = 1;
  for (const auto& x : xs) p *= x;
  return p;
}

QMatrix yrow(const Q& x, const Q& y) {
  QMatrix m(1, 3);
  m(0, 0) = 1, m(0, 1) = x, m(0, 2) = y;
  return m;
}

Q quad_form(const Q& s, const Q& p, const Q& q, const Q& x, const Q& y) {
  return (q * s * x + p * s * y + p * q) / ((q * x + p * y) * (s * y + q) * x);
}
}  // namespace

TEST_CASE("canonical form of Gr(2,4) in the [I | A] chart") {
  auto x = gr24_chart(1, 1, 1, 2);
  CHECK(qabs(canonical_form_on(gr24_cluster(S({1, 3})), x, 4)) == Q(1, 2));
  Rng rng(11);
  for (int t = 0; t < 20; ++t) {
    Q p = rng.positive_rational(), q = rng.positive_rational(), r = rng.positive_rational(),
      s = rng.positive_rational();
    if (p * s == r * q) continue;
    auto xj = gr24_chart(p, q, r, s);
    Q expect = qabs(1 / (p * (p * s - r * q) * s));
    Q a = canonical_form_on(gr24_cluster(S({1, 3})), xj, 4);
    Q b = canonical_form_on(gr24_cluster(S({2, 4})), xj, 4);
    CHECK(qabs(a) == expect);
    CHECK(qabs(b) == expect);
  }
}

TEST_CASE("canonical form of a lower cell in a hand-made chart") {
  auto f = P("[2,3,1,5,4]");
  auto mk = [](const Q& a, const Q& b, const Q& c) {
    auto x = frame_jets({a, b, c}, coordinate_frame(3));
    JetMatrix m(2, 5);
    m(0, 0) = 1, m(1, 1) = 1;
    m(0, 3) = -x[0], m(0, 4) = -x[2], m(1, 3) = x[1];
    return Cyclic<Jet>(m, 1);
  };
  CHECK(cell_of(CyclicMatrix(values(mk(1, 2, 3).m), 1)) == f);
  Cluster hand{5, 2, S({1, 2}), {S({1, 2}), S({2, 4}), S({4, 5}), S({2, 5})}};
  CHECK(qabs(canonical_form_on(hand, mk(1, 1, 1), 3)) == 1);
  CHECK(qabs(canonical_form_on(cluster_of(f, 2), mk(1, 1, 1), 3)) == 1);
  Rng rng(3);
  for (int t = 0; t < 10; ++t) {
    Q a = rng.positive_rational(), b = rng.positive_rational(), c = rng.positive_rational();
    CHECK(qabs(canonical_form_on(cluster_of(f, 2), mk(a, b, c), 3)) == 1 / (a * b * c));
  }
}

TEST_CASE("Le weights are dlog coordinates of every cell") {
  Rng rng(5);
  for (int n = 2; n <= 5; ++n)
    for (int k = 1; k < n; ++k)
      for (const auto& f : enumerate_bounded(n, k, n - k)) {
        const int d = cell_dimension(f, k);
        if (d == 0) continue;
        auto params = positive_params(rng, d);
        auto pt = chart_point(f, k, params);
        INFO(f.str(), " k=", k);
        CHECK(qabs(eval_canonical_cell(pt, coordinate_frame(d)).value) == 1 / prod(params));
      }
}

TEST_CASE("cluster independence and frame covariance") {
  Rng rng(8);
  for (auto [fs, k] : {std::pair{"[1,2,3,4,5]", 2}, {"[2,3,1,5,4]", 2}, {"[1,2,3,4,5,6]", 3}, {"[2,1,3,5,4,6]", 2}}) {
    auto f = P(fs);
    const int d = cell_dimension(f, k);
    for (int t = 0; t < 5; ++t) {
      auto params = positive_params(rng, d);
      auto frame = random_frame(d, rng.below(1000));
      Q a = eval_canonical_cell(chart_point(f, k, params), frame).value;
      Q b = eval_canonical_cell(chart_point(f, k, params, greedy_cluster(f, k, rng.below(1000))), frame).value;
      INFO(fs);
      CHECK(qabs(a) == qabs(b));
      CHECK(a == frame_det(frame) * eval_canonical_cell(chart_point(f, k, params), coordinate_frame(d)).value);
      auto flipped = frame;
      for (auto& x : flipped[0]) x = -x;
      CHECK(eval_canonical_cell(chart_point(f, k, params), flipped).value == -a);
    }
  }
  auto f = AffinePermutation::identity(4);
  CHECK_THROWS_AS(eval_canonical_cell(chart_point(f, 2, {1, 1, 1, 1}), coordinate_frame(3)), std::invalid_argument);
  CHECK_THROWS_AS(eval_canonical_cell(chart_point(f, 2, {1, 1, 1, 1}), TangentFrame(4, std::vector<Q>(4, Q(1)))),
                  std::invalid_argument);
  CHECK_THROWS_AS(chart_point(f, 2, {1, 1, 0, 1}), std::invalid_argument);
}

TEST_CASE("twist preserves the top form") {
  // The worked Gr(2,4) chart: cluster ratios of τ(U) are ±(s, s/p, s/(ps-rq), r/p).
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    Q p = rng.positive_rational(), q = rng.positive_rational(), r = rng.positive_rational(),
      s = rng.positive_rational();
    if (p * s == r * q) continue;
    auto u = gr24_chart(p, q, r, s);
    auto ut = right_twist(u, 1, 1);
    auto ratio = [&](std::initializer_list<int> j) { return qabs(ut.plucker(S(j)).v / ut.plucker(S({1, 2})).v); };
    CHECK(ratio({2, 3}) == qabs(s));
    CHECK(ratio({3, 4}) == qabs(s / p));
    CHECK(ratio({1, 4}) == qabs(s / (p * s - r * q)));
    CHECK(ratio({1, 3}) == qabs(r / p));
    CHECK(qabs(canonical_form_on(gr24_cluster(S({1, 3})), ut, 4)) == qabs(1 / (p * (p * s - r * q) * s)));
  }
  for (auto [k, l, n] : {std::tuple{1, 1, 4}, {1, 1, 5}, {2, 1, 5}, {1, 2, 6}}) {
    auto rep = verify_twist_top_form(k, l, n, 5, 17);
    CHECK(rep.ok());
    CHECK(rep.checked == 5);
  }
}

TEST_CASE("stacked twist preserves the top form") {
  for (auto [k, l, n] : {std::tuple{1, 1, 4}, {2, 1, 5}, {1, 2, 5}}) {
    auto rep = verify_top_pullback(k, l, n, 20, 23);
    INFO(k, l, n);
    CHECK(rep.ok());
    CHECK(rep.checked == 20);
  }
  auto rep = verify_top_pullback(2, 2, 6, 3, 29);
  CHECK(rep.ok());
  CHECK_THROWS_AS(verify_top_pullback(1, 1, 5, 1, 1), std::invalid_argument);
}

TEST_CASE("lower-cell pullback: the worked example") {
  auto f = P("[2,3,1,5,4]");
  auto x = frame_jets({1, 2, 3, Q(1, 2), 2, 3, 5}, coordinate_frame(7));  // a b c p q r s
  const Jet &a = x[0], &b = x[1], &c = x[2], &p = x[3], &q = x[4], &r = x[5], &s = x[6];
  JetMatrix vm(2, 5), wm(1, 5);
  vm(0, 0) = 1, vm(1, 1) = 1, vm(0, 3) = -a, vm(0, 4) = -c, vm(1, 3) = b;
  wm(0, 0) = p, wm(0, 1) = -q, wm(0, 2) = 1, wm(0, 3) = -r, wm(0, 4) = s;
  Cyclic<Jet> v(vm, 1), w(wm, 1);
  auto [lhs, rhs] = stacked_pullback_values(f, v, w, 7);
  Q expect = 1 / (a.v * b.v * c.v * p.v * q.v * r.v * s.v);
  CHECK(qabs(lhs) == expect);
  CHECK(qabs(rhs) == expect);

  // Ṽ ∝ (1/(cp+s), 0, 0, 1, 0): its one cluster ratio has dlog -(p dc + c dp + ds)/(cp+s).
  auto [wt, vt] = stacked_twist_unchecked(v, w);
  Cluster cv{5, 1, S({4}), {S({4}), S({1})}};
  auto rows = dlog_rows(cv, vt, 7);
  REQUIRE(rows.size() == 1);
  Q den = c.v * p.v + s.v;
  CHECK(rows[0] == std::vector<Q>{0, 0, -p.v / den, -c.v / den, 0, 0, -1 / den});
  CHECK(vt.plucker(S({2})).v == 0);
  CHECK(vt.plucker(S({1})).v / vt.plucker(S({4})).v == 1 / den);
}

TEST_CASE("lower-cell pullback on all cells of a small class") {
  long cells = 0;
  for (long inv = 0; inv <= 2; ++inv)
    for (const auto& f : enumerate_bounded(5, 2, 1, inv)) {
      auto rep = verify_cell_pullback(f, 2, 1, inv >= 2 ? 10 : 3, 31);
      INFO(f.str());
      CHECK(rep.ok());
      ++cells;
    }
  CHECK(cells > 5);
  auto rep = verify_cell_pullback(P("[2,1,3,5,4,6]"), 2, 2, 3, 37);
  CHECK(rep.ok());
  CHECK_THROWS_AS(verify_cell_pullback(P("[1,4,2,3,5]"), 2, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("pushforward to the quadrilateral") {
  const auto f = P("[2,1,3,4]"), g = P("[1,2,4,3]");
  auto z = quad_z(1, 1, 1);
  CHECK(qabs(pushforward_eval(f, z, yrow(1, 2), coordinate_frame(2)).value) == Q(1, 2));
  CHECK(qabs(pushforward_eval(g, z, yrow(1, 1), coordinate_frame(2), false).value) == Q(1, 4));
  CHECK_THROWS_AS(pushforward_eval(g, z, yrow(1, 1), coordinate_frame(2)), std::domain_error);

  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    Q s = rng.positive_rational(), p = rng.positive_rational(), q = rng.positive_rational();
    auto zq = quad_z(s, p, q);
    Q x = rng.positive_rational(), y = rng.positive_rational();
    CHECK(qabs(pushforward_eval(f, zq, yrow(x, y), coordinate_frame(2)).value) == 1 / (x * y));
    // A point of Z(Π_g): V = (1, a, b, 0).
    Q a = rng.positive_rational(), b = rng.positive_rational();
    Q gx = (p * a + b) / (1 + s * a), gy = -q * a / (1 + s * a);
    CHECK(qabs(pushforward_eval(g, zq, yrow(gx, gy), coordinate_frame(2)).value) ==
          qabs(q * q / ((q * gx + p * gy) * (s * gy + q) * gy)));
    Q c = rng.positive_rational();
    TangentFrame scaled{{c, 0}, {0, c}};
    CHECK(pushforward_eval(f, zq, yrow(x, y), scaled).value ==
          c * c * pushforward_eval(f, zq, yrow(x, y), coordinate_frame(2)).value);
  }
}

TEST_CASE("amplituhedron form of the quadrilateral") {
  Triangulation t1{4, 1, 2, {P("[2,1,3,4]"), P("[1,2,4,3]")}};
  Triangulation t2{4, 1, 2, {P("[1,3,2,4]"), P("[0,2,3,5]")}};
  std::sort(t1.cells.begin(), t1.cells.end());
  std::sort(t2.cells.begin(), t2.cells.end());
  auto z = quad_z(1, 1, 1);
  CHECK(amplituhedron_form_eval(t1, z, yrow(1, 1), coordinate_frame(2)).value == Q(3, 4));
  CHECK(amplituhedron_form_eval(t2, z, yrow(1, 1), coordinate_frame(2)).value == Q(3, 4));

  Rng rng(43);
  for (int t = 0; t < 5; ++t) {
    Q s = rng.positive_rational(), p = rng.positive_rational(), q = rng.positive_rational();
    auto zq = quad_z(s, p, q);
    auto c1 = calibrate(t1, zq, 1), c2 = calibrate(t2, zq, 2);
    for (int u = 0; u < 4; ++u) {
      auto y = zmap(sample_top_cell(1, 4, 47, static_cast<std::uint64_t>(t * 4 + u)).m, zq.m);
      auto x = y_chart_coords(y);
      Q expect = quad_form(s, p, q, x(0, 0), x(0, 1));
      CHECK(amplituhedron_form_eval(c1, y, coordinate_frame(2)).value == expect);
      CHECK(amplituhedron_form_eval(c2, y, coordinate_frame(2)).value == expect);
      CHECK(expect > 0);
    }
  }
  // Y = (1, 1, 1) lies on the diagonal x = p/s of the second triangulation,
  // where each cell form has a pole that cancels in the sum.
  CHECK(amplituhedron_form_eval(t2, z, yrow(1, 1), coordinate_frame(2)).convention.find("wall") != std::string::npos);
  for (int t = 0; t < 3; ++t) {
    Q s = rng.positive_rational(), p = rng.positive_rational(), q = rng.positive_rational();
    Q y = rng.rational();
    if (s * y + q == 0 || q * p / s + p * y == 0 || y == 0) continue;
    CHECK(amplituhedron_form_eval(t2, quad_z(s, p, q), yrow(p / s, y), coordinate_frame(2)).value ==
          quad_form(s, p, q, p / s, y));
    CHECK(amplituhedron_form_eval(t1, quad_z(s, p, q), yrow(y, 0), coordinate_frame(2)).value ==
          quad_form(s, p, q, y, 0));
  }
  // x = 0 is a facet.
  CHECK_THROWS_AS(amplituhedron_form_eval(t1, z, yrow(0, 1), coordinate_frame(2)), std::domain_error);
}

TEST_CASE("pushforward sign is constant on each cell image") {
  for (auto [n, k, m] : {std::tuple{4, 1, 2}, {5, 1, 2}, {5, 2, 2}}) {
    auto z = sample_positive(k + m, n, 53);
    const std::size_t km = static_cast<std::size_t>(k) * m;
    for (const auto& f : candidate_cells(n, k, m)) {
      std::set<int> seen;
      for (int i = 0; i < 50; ++i) {
        auto v = sample_in_cell(f, k, 59, static_cast<std::uint64_t>(i));
        seen.insert(sign(pushforward_eval(f, z, zmap(v.m, z.m), coordinate_frame(km)).value));
      }
      INFO(f.str());
      CHECK(seen.size() == 1);
      CHECK(!seen.count(0));
    }
  }
}
