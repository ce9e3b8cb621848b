#include <doctest.h>

#include <set>

#include "twistlab/positroid.hpp"
#include "twistlab/rng.hpp"

using namespace twistlab;

namespace {
AffinePermutation P(const char* s) { return AffinePermutation::parse(s); }
Subset S(std::initializer_list<int> xs) { return make_subset(xs); }

// Oracle: support of the Plücker vector.
std::set<Subset> support(const CyclicMatrix& v) {
  auto p = plucker(v);
  auto s = p.support_sets();
  return {s.begin(), s.end()};
}

std::vector<Q> random_params(Rng& rng, int d) {
  std::vector<Q> p(d);
  for (auto& x : p) x = rng.positive_rational();
  return p;
}

// Crossing-quadruple definition, as an oracle for the run-count test.
bool ws_oracle(Subset s, Subset t, int n) {
  Subset a = s & ~t, b = t & ~s;
  auto cross = [&](Subset x, Subset y) {
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        for (int p = j + 1; p <= n; ++p)
          for (int q = p + 1; q <= n; ++q)
            if (contains(x, i) && contains(y, j) && contains(x, p) && contains(y, q)) return true;
    return false;
  };
  return !cross(a, b) && !cross(b, a);
}
}  // namespace

TEST_CASE("necklaces") {
  auto id = necklace_of(AffinePermutation::identity(5), 2);
  for (int i = 1; i <= 5; ++i) CHECK(id.I[i - 1] == cyclic_interval(i, i + 2, 5));
  CHECK(necklace_of(P("[2,1,3,5,4]"), 2).I[0] == S({1, 2}));
  for (int k = 1; k <= 3; ++k)
    for (const auto& f : enumerate_bounded(5, k, 5 - k)) {
      auto g = necklace_of(f, k);
      for (int i = 1; i <= 5; ++i) {
        Subset next = g.I[i % 5];
        CHECK(((g.I[i - 1] & ~singleton(i)) & ~next) == 0);
      }
    }
  CHECK_THROWS(necklace_of(P("[5,2,3,4,1]"), 2));
}

TEST_CASE("positroids") {
  CHECK(positroid_of(AffinePermutation::identity(4), 2).bases.size() == 6);
  auto m = positroid_of(P("[2,3,1,5,4]"), 2);
  std::set<Subset> got(m.bases.begin(), m.bases.end());
  CHECK(got == std::set<Subset>{S({1, 2}), S({1, 4}), S({2, 4}), S({2, 5}), S({4, 5})});
  CHECK(!m.contains(S({1, 3})));
  CHECK(!m.contains(S({3, 5})));
}

TEST_CASE("positroid equals Plücker support of the parametrization, n <= 6") {
  Rng rng(11);
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k < n; ++k)
      for (const auto& f : enumerate_bounded(n, k, n - k)) {
        auto v = parametrize_cell(f, k, random_params(rng, cell_dimension(f, k)));
        auto pos = positroid_of(f, k);
        CHECK(support(v) == std::set<Subset>(pos.bases.begin(), pos.bases.end()));
        // Matroid basis exchange.
        for (Subset a : pos.bases)
          for (Subset b : pos.bases)
            for (int x : elements(a & ~b)) {
              bool ok = false;
              for (int y : elements(b & ~a)) ok = ok || pos.contains((a & ~singleton(x)) | singleton(y));
              CHECK(ok);
            }
        for (Subset s : necklace_of(f, k).I) CHECK(pos.contains(s));
        // Plückers of the parametrization are nonnegative.
        for (const auto& c : plucker(v).coords) CHECK(c >= 0);
      }
}

TEST_CASE("cell_of") {
  CHECK(cell_of(from_ints({{1, 0, 0, -2, -1}, {0, 1, 1, 2, 0}})) == P("[2,1,3,5,4]"));
  CHECK(cell_of(from_ints({{1, 0, 2, 2, 0}})) == P("[2,1,3,5,4]"));
  CHECK(cell_of(from_ints({{1, 1, 1, 1, 1}, {1, 2, 3, 4, 5}, {1, 4, 9, 16, 25}})) == AffinePermutation::identity(5));
  CHECK_THROWS_AS(cell_of(from_ints({{1, 0, 1}, {0, 1, 1}})), NotTNN);

  Rng rng(5);
  int count = 0;
  for (int n = 3; n <= 6 && count < 200; ++n)
    for (int k = 1; k < n; ++k) {
      auto cells = enumerate_bounded(n, k, n - k);
      for (int t = 0; t < 15; ++t) {
        const auto& f = cells[rng.below(cells.size())];
        auto v = parametrize_cell(f, k, random_params(rng, cell_dimension(f, k)));
        CHECK(cell_of(v) == f);
        CHECK(satisfies_rank_characterization(v, f));
        ++count;
      }
    }
  CHECK(count >= 200);
}

TEST_CASE("weak separation") {
  CHECK(!is_weakly_separated(S({1, 3}), S({2, 4}), 4));
  CHECK(is_weakly_separated(S({1, 2}), S({3, 4}), 4));
  std::vector<Subset> c{S({1, 2}), S({2, 4}), S({4, 5}), S({2, 5})};
  for (Subset a : c)
    for (Subset b : c) CHECK(is_weakly_separated(a, b, 5));
  for (int k = 1; k <= 3; ++k)
    for (Subset a : k_subsets(6, k))
      for (Subset b : k_subsets(6, k)) CHECK(is_weakly_separated(a, b, 6) == ws_oracle(a, b, 6));
}

TEST_CASE("clusters") {
  auto top = cluster_of(AffinePermutation::identity(4), 2);
  CHECK(top.members.size() == 5);
  auto c = cluster_of(P("[2,3,1,5,4]"), 2);
  CHECK(std::set<Subset>(c.members.begin(), c.members.end()) ==
        std::set<Subset>{S({1, 2}), S({2, 4}), S({4, 5}), S({2, 5})});
  CHECK(c.base == S({1, 2}));
  // Size formula and postconditions (asserted inside) for every cell, n <= 6.
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k < n; ++k)
      for (const auto& f : enumerate_bounded(n, k, n - k)) {
        auto& cl = cluster_of(f, k);
        CHECK(static_cast<long>(cl.members.size()) == k * (n - k) + 1 - f.inversions());
        auto pos = positroid_of(f, k);
        for (Subset s : cl.members) CHECK(pos.contains(s));
        CHECK(greedy_cluster(f, k, 3).members.size() == cl.members.size());
      }
}

TEST_CASE("Le-diagrams") {
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k < n; ++k)
      for (const auto& f : enumerate_bounded(n, k, n - k)) {
        const auto& d = le_diagram_of(f, k);
        CHECK(d.le_condition());
        CHECK(d.num_plus() == cell_dimension(f, k));
        auto g = plabic_graph_of(d);
        CHECK(g.internal_faces() == cell_dimension(f, k) + 1);
      }
}

TEST_CASE("parametrize_cell") {
  // A hand-made chart of the cell [2,3,1,5,4]: Δ12 = 1, Δ24 = a, Δ45 = bc, Δ25 = c.
  Q a(2, 3), b(5, 7), c(3, 11);
  auto v = parametrize_cell(P("[2,3,1,5,4]"), 2, {c / a, a, b});
  auto p = plucker(v);
  CHECK(p[S({1, 2})] == 1);
  CHECK(p[S({2, 4})] == a);
  CHECK(p[S({4, 5})] == b * c);
  CHECK(p[S({2, 5})] == c);
  CHECK(p[S({1, 3})] == 0);

  // Top cell of Gr(1, n): (1, x1, x1x2, ...).
  auto row = parametrize_cell(AffinePermutation::identity(4), 1, {Q(2), Q(3), Q(5)});
  CHECK(tnn_membership(row) == TnnClass::TotallyPositive);
  CHECK_THROWS(parametrize_cell(AffinePermutation::identity(4), 1, {Q(2), Q(0), Q(5)}));
  CHECK_THROWS(parametrize_cell(AffinePermutation::identity(4), 1, {Q(2)}));
}

TEST_CASE("tnn membership and stackability") {
  CyclicMatrix v(from_ints({{1, 0, 0, -2, -1}, {0, 1, 1, 2, 0}}), 1);
  CHECK(tnn_membership(v, 2) == TnnClass::InGrGeM);
  CyclicMatrix vdm(from_ints({{1, 1, 1, 1}, {1, 2, 3, 4}}), 1);
  CHECK(tnn_membership(vdm) == TnnClass::TotallyPositive);
  CHECK(tnn_membership(CyclicMatrix(from_ints({{1, 0, 1}, {0, 1, 1}}), 1)) == TnnClass::NotTNN);
  CHECK(tnn_membership(v) == TnnClass::TNN);

  CHECK(is_stackable(AffinePermutation::identity(5), 2, AffinePermutation::identity(5), 1));
  CHECK(is_stackable(P("[2,1,3,5,4]"), 2, AffinePermutation::identity(5), 1));
  CHECK(!is_stackable(P("[1,4,2,3,5]"), 2, AffinePermutation::identity(5), 1));
}
