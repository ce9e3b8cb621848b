#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "twistlab/fiber.hpp"

using namespace twistlab;
using namespace testutil;

namespace {
CyclicMatrix fig2_v() { return CyclicMatrix(from_ints({{1, 0, 0, -2, -1}, {0, 1, 1, 2, 0}}), 1); }
CyclicMatrix fig2_w() { return CyclicMatrix(from_ints({{1, -1, 3, -2, 1}}), 1); }
const long D[5] = {2, 4, 8, 10, 4};

CyclicMatrix row(std::initializer_list<Q> xs) {
  QMatrix m(1, xs.size());
  std::size_t j = 0;
  for (const auto& x : xs) m(0, j++) = x;
  return CyclicMatrix(m, 0);
}
QMatrix normalize_row(const QMatrix& m) {
  QMatrix r = m;
  for (std::size_t j = 0; j < r.cols(); ++j) r(0, j) /= m(0, 0);
  return r;
}
std::vector<AffinePermutation> inverses(std::vector<AffinePermutation> v) {
  for (auto& f : v) f = f.inverse();
  std::sort(v.begin(), v.end());
  return v;
}
}  // namespace

TEST_CASE("sample_positive is totally positive") {
  for (auto [k, n] : {std::pair{1, 4}, {2, 4}, {3, 5}, {4, 6}, {6, 6}}) {
    auto z = sample_positive(k, n, 11 + k * n);
    CHECK(z.rows() == static_cast<std::size_t>(k));
    CHECK(tnn_membership(z) == TnnClass::TotallyPositive);
    CHECK(tnn_sign(plucker(z)) == 1);
  }
  // Vandermonde at t = 1..4: every 2-minor is t_j - t_i > 0.
  CyclicMatrix v(from_ints({{1, 1, 1, 1}, {1, 2, 3, 4}}), 1);
  for (auto x : plucker(v).coords) CHECK(x > 0);
  CHECK(sample_positive(3, 6, 5).m == sample_positive(3, 6, 5).m);
}

TEST_CASE("zmap on the quadrilateral chart") {
  const Q s(2), p(3), q(5), a(1, 2), b(7), c(4, 3);
  auto z = quad_z(s, p, q);
  CHECK(zmap(row({1, 0, b, c}).m, z.m) == row({1, b, c}).m);
  CHECK(normalize_row(zmap(row({1, a, b, 0}).m, z.m)) == row({1, (p * a + b) / (1 + s * a), -q * a / (1 + s * a)}).m);
  auto w = orthogonal_complement(z.m);
  CHECK(rank(vstack(w, row({-s, 1, -p, q}).m)) == 1);
  QMatrix v = row({1, a, b, 0}).m;
  CHECK(zmap(v + row({a * 3}).m * w, z.m) == zmap(v, z.m));
  CHECK_THROWS_AS(zmap(QMatrix(1, 4), z.m), RankCollapse);
}

TEST_CASE("fiber_solve inverts Z on the quadrilateral cells") {
  Rng rng(3);
  const auto f = P("[2,1,3,4]"), g = P("[1,2,4,3]");
  for (int t = 0; t < 20; ++t) {
    const Q s = rng.positive_rational(), p = rng.positive_rational(), q = rng.positive_rational();
    auto z = quad_z(s, p, q);
    // A point of Π_g and its image (x, y).
    const Q a = rng.positive_rational(), b = rng.positive_rational();
    const Q x = (p * a + b) / (1 + s * a), y = -q * a / (1 + s * a);
    auto r = fiber_solve(g, row({1, 0, x, y}), z);
    REQUIRE(r.point);
    CHECK(r.claimed);
    CHECK(r.point->status == FiberStatus::ExactLinear);
    auto vg = normalize_row(r.point->Vp.m);
    CHECK(vg(0, 1) == -y / (s * y + q));
    CHECK(vg(0, 2) == (q * x + p * y) / (s * y + q));
    CHECK(vg == row({1, a, b, 0}).m);
    // y < 0, so the image point is not in Z(Π_f); its fiber point exists but is not TNN.
    auto rf = fiber_solve(f, row({1, a, b, 0}), z);
    REQUIRE(rf.point);
    CHECK(!rf.claimed);
    CHECK(normalize_row(rf.point->Vp.m) == row({1, 0, x, y}).m);
    // And on Π_f itself: b = x, c = y.
    const Q bb = rng.positive_rational(), cc = rng.positive_rational();
    auto rf2 = fiber_solve(f, row({1, 1, 1, 1}), z);
    REQUIRE(rf2.point);
    auto img = normalize_row(zmap(row({1, 1, 1, 1}).m, z.m));
    CHECK(normalize_row(rf2.point->Vp.m) == row({1, 0, img(0, 1), img(0, 2)}).m);
    auto rf3 = fiber_solve(f, row({1, 0, bb, cc}), z);
    REQUIRE(rf3.point);
    CHECK(rf3.claimed);
    CHECK(rf3.point->A == QMatrix(1, 1));
  }
}

TEST_CASE("fiber point of V's own cell is A = 0") {
  Rng rng(5);
  for (auto [n, k, m] : {std::tuple{5, 2, 2}, {5, 1, 2}, {6, 2, 2}}) {
    const int l = n - k - m;
    auto z = sample_positive(k + m, n, rng.below(1000));
    for (const auto& f : enumerate_bounded(n, k, l, static_cast<long>(k) * l)) {
      auto v = random_in_cell(rng, f, k);
      auto r = fiber_solve(f, v, z);
      INFO(f.str());
      if (!r.point) continue;  // cells whose image is lower-dimensional
      CHECK(r.claimed);
      CHECK(r.point->A == QMatrix(k, l));
    }
  }
}

TEST_CASE("claims of the worked example are the rotations of f") {
  auto z = CyclicMatrix(orthogonal_complement(fig2_w().m), 3);
  auto s = fiber_setup(fig2_v(), z);
  auto c = claims(s, enumerate_bounded(5, 2, 1, 2));
  std::vector<AffinePermutation> rot;
  for (int r = 0; r < 5; ++r) rot.push_back(P("[2,1,3,5,4]").rotate(r));
  std::sort(rot.begin(), rot.end());
  CHECK(c.claimed == rot);
  CHECK(c.unresolved == 0);
}

TEST_CASE("pentagon claims agree with point-in-triangle") {
  Rng rng(9);
  auto cands = enumerate_bounded(5, 1, 2, 2);
  REQUIRE(cands.size() == 10);
  std::map<std::size_t, int> sizes;
  for (int t = 0; t < 30; ++t) {
    auto z = sample_positive(3, 5, rng.below(1u << 30));
    auto v = sample_top_cell(1, 5, 77, static_cast<std::uint64_t>(t));
    auto y = zmap(v.m, z.m);
    auto c = claims(fiber_setup(v, z), cands);
    std::vector<AffinePermutation> oracle;
    for (const auto& f : cands) {
      auto supp = positroid_of(f, 1).bases;
      REQUIRE(supp.size() == 3);
      std::vector<std::size_t> cs;
      for (Subset b : supp) cs.push_back(static_cast<std::size_t>(elements(b)[0] - 1));
      auto coef = solve(z.m.submatrix({0, 1, 2}, cs), y.transpose());
      bool inside = true;
      for (std::size_t i = 0; i < 3; ++i) inside = inside && coef(i, 0) > 0;
      if (inside) oracle.push_back(f);
    }
    std::sort(oracle.begin(), oracle.end());
    CHECK(c.claimed == oracle);
    sizes[c.claimed.size()]++;
  }
  for (auto [sz, cnt] : sizes) CHECK((sz >= 3 && sz <= 5));
}

TEST_CASE("fiber minors of the worked example are the printed linear forms") {
  auto z = CyclicMatrix(orthogonal_complement(fig2_w().m), 3);
  auto base = stacked_twist(fig2_v(), fig2_w());
  Rng rng(1);
  for (int t = 0; t < 25; ++t) {
    const Q a = rng.rational(), b = rng.rational();
    QMatrix am(2, 1);
    am(0, 0) = a, am(1, 0) = b;
    CyclicMatrix vp(fig2_v().m + am * fig2_w().m, 1);
    CHECK(zmap(vp.m, z.m) == zmap(fig2_v().m, z.m));
    CHECK(vp.plucker(S({1, 2})) == a - b + 1);
    CHECK(vp.plucker(S({2, 3})) == -4 * a);
    CHECK(vp.plucker(S({3, 4})) == 8 * a + 6 * b + 2);
    CHECK(vp.plucker(S({4, 5})) == -2 * a - 4 * b + 2);
    CHECK(vp.plucker(S({1, 5})) == 2 * b);
    CHECK(vp.plucker(S({1, 3})) == a + 3 * b + 1);
    auto tw = stacked_twist_unchecked(vp, fig2_w());
    CHECK(tw.Wt.m == base.Wt.m);
    CHECK(tw.Vt.m == base.Vt.m - am.transpose() * base.Wt.m);
    for (long j = 1; j <= 5; ++j) CHECK(tw.Vt.at(0, j) * D[j - 1] == vp.interval_minor(j, j + 2));
  }
  // Every minor is affine-linear in (a, b).
  auto minor_at = [&](Subset s, const Q& a, const Q& b) {
    QMatrix am(2, 1);
    am(0, 0) = a, am(1, 0) = b;
    return CyclicMatrix(fig2_v().m + am * fig2_w().m, 1).plucker(s);
  };
  for (Subset s : k_subsets(5, 2)) {
    const Q c = minor_at(s, 0, 0), ca = minor_at(s, 1, 0) - c, cb = minor_at(s, 0, 1) - c;
    for (int t = 0; t < 5; ++t) {
      const Q a = rng.rational(), b = rng.rational();
      CHECK(minor_at(s, a, b) == c + a * ca + b * cb);
    }
  }
  auto rep = fiber_twist_check(fig2_v(), z, 30, 4);
  CHECK(rep.ok());
  CHECK(rep.tnn_agree > 0);
}

TEST_CASE("boundary signs") {
  Rng rng(12);
  for (auto [n, k, m] : {std::tuple{5, 2, 2}, {6, 2, 2}, {5, 1, 2}}) {
    auto z = sample_positive(k + m, n, 99);
    std::vector<int> first;
    for (int t = 0; t < 25; ++t) {
      auto v = sample_top_cell(k, n, 5, static_cast<std::uint64_t>(t));
      auto sg = signs(boundary_sign_profile(zmap(v.m, z.m), z));
      for (int x : sg) CHECK(x != 0);
      if (first.empty()) first = sg;
      CHECK(sg == first);
    }
    // A cell outside the bounded class: its stack is degenerate, some α vanishes.
    const int l = n - k - m;
    for (const auto& f : enumerate_bounded(n, k, n - k)) {
      if (f.in_class(k, l) || cell_dimension(f, k) == 0) continue;
      auto v = random_in_cell(rng, f, k);
      QMatrix y = v.m * z.m.transpose();
      if (rank(y) < static_cast<std::size_t>(k)) continue;
      auto sg = signs(boundary_sign_profile(y, z));
      CHECK(std::count(sg.begin(), sg.end(), 0) > 0);
      break;
    }
  }
}

TEST_CASE("fiber points stay in Gr>=m and claim sets are parity dual") {
  for (auto [n, k, m] : {std::tuple{5, 2, 2}, {5, 1, 2}, {6, 2, 2}}) {
    const int l = n - k - m;
    auto z = sample_positive(k + m, n, 31 + n * k);
    auto cands = enumerate_bounded(n, k, l, static_cast<long>(k) * l);
    auto dual_cands = enumerate_bounded(n, l, k, static_cast<long>(k) * l);
    for (int t = 0; t < 8; ++t) {
      auto v = sample_top_cell(k, n, 17, static_cast<std::uint64_t>(t));
      auto s = fiber_setup(v, z);
      ClaimSet c;
      for (const auto& f : cands) {
        auto r = fiber_solve(f, s);
        CHECK(!r.unresolved());
        if (r.claimed) c.claimed.push_back(f);
        if (r.point && tnn_membership(r.point->Vp) != TnnClass::NotTNN)
          CHECK(tnn_membership(r.point->Vp, m) == TnnClass::InGrGeM);
      }
      std::sort(c.claimed.begin(), c.claimed.end());
      CHECK(!c.claimed.empty());
      auto th = stacked_twist(s.V, s.W);
      auto zt = CyclicMatrix(orthogonal_complement(th.Wt.m), l + m - 1);
      auto dual = claims(fiber_setup(th.Vt, zt, th.Wt), dual_cands);
      CHECK(dual.unresolved == 0);
      CHECK(inverses(c.claimed) == dual.claimed);
    }
  }
}

TEST_CASE("fiber point jets keep the fiber equations") {
  auto z = sample_positive(4, 6, 8);
  auto v = sample_top_cell(2, 6, 8, 0);
  auto s = fiber_setup(v, z);
  bool any = false;
  for (const auto& f : enumerate_bounded(6, 2, 2, 4)) {
    auto r = fiber_solve(f, s);
    if (!r.claimed) continue;
    any = true;
    // Move V along random directions in 3 coordinates.
    Rng rng(2);
    JetMatrix vj = lift(v.m);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        std::vector<Q> d(3);
        for (auto& x : d) x = rng.rational();
        vj(i, j) = Jet(v.m(i, j), d);
      }
    auto vp = fiber_point_jet(f, s, r.point->A, Cyclic<Jet>(vj, 1));
    CHECK(values(vp.m) == r.point->Vp.m);
    JetMatrix yj = vp.m * lift(z.m.transpose()), y0 = vj * lift(z.m.transpose());
    for (std::size_t i = 0; i < yj.rows(); ++i)
      for (std::size_t j = 0; j < yj.cols(); ++j) CHECK(same_jet(yj(i, j), y0(i, j)));
    auto pos = positroid_of(f, 2);
    for (Subset set : k_subsets(6, 2)) {
      if (pos.contains(set)) continue;
      auto e = elements(set);
      Jet d = vp.plucker(set);
      CHECK(same_jet(d, Jet(0)));
    }
  }
  CHECK(any);
}
