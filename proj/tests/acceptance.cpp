// One pass/fail line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "reproduce.hpp"
#include "twistlab/forms.hpp"
#include "twistlab/triang.hpp"

using namespace twistlab;
using namespace testutil;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail = what;
    ok = ok && cond;
  }
};

bool section_passes(const char* name, Outcome& o) {
  auto r = repro::run(name, 1);
  if (!r.at("pass").get<bool>())
    for (auto& [k, v] : r.at("checks").items())
      if (!v.get<bool>()) o.require(false, std::string(name) + ": " + k);
  return r.at("pass").get<bool>();
}

long brute_plane_partitions(int a, int b, int c) {
  std::vector<int> x(a * b, 0);
  long count = 0;
  std::function<void(int)> rec = [&](int pos) {
    if (pos == a * b) {
      ++count;
      return;
    }
    const int i = pos / b, j = pos % b;
    int hi = c;
    if (i > 0) hi = std::min(hi, x[(i - 1) * b + j]);
    if (j > 0) hi = std::min(hi, x[i * b + j - 1]);
    for (int v = 0; v <= hi; ++v) {
      x[pos] = v;
      rec(pos + 1);
    }
  };
  rec(0);
  return count;
}

Outcome golden_twist() {
  Outcome o;
  section_passes("fig2", o);
  return o;
}

Outcome roundtrip() {
  Outcome o;
  Rng rng(2024);
  const std::tuple<int, int, int> shapes[] = {{1, 1, 4}, {2, 1, 5}, {1, 2, 5}, {2, 2, 6}};
  for (int t = 0; t < 500; ++t) {
    auto [k, l, n] = shapes[t % 4];
    auto u = random_generic(rng, k, l, n);
    o.require(left_twist(right_twist(u, k, l), k, l).m == u.m, "roundtrip mismatch");
  }
  return o;
}

Outcome cell_duality() {
  Outcome o;
  Rng rng(303);
  for (const auto& f : enumerate_bounded(5, 2, 1))
    for (int t = 0; t < 20; ++t) {
      auto th = stacked_twist(random_in_cell(rng, f, 2), random_dual_positive(rng, 1, 5, 2));
      o.require(cell_of(th.Vt) == f.inverse(), "cell_of(V~) != f^-1 for " + f.str());
      o.require(tnn_membership(alt(th.Wt)) == TnnClass::TotallyPositive, "alt(W~) not positive for " + f.str());
    }
  return o;
}

Outcome minor_identities() {
  Outcome o;
  Rng rng(404);
  const std::tuple<int, int, int> shapes[] = {{1, 1, 4}, {2, 1, 5}, {1, 2, 5}, {2, 2, 6}};
  for (int t = 0; t < 50; ++t) {
    auto [k, l, n] = shapes[t % 4];
    auto v = random_in_cell(rng, AffinePermutation::identity(n), k);
    auto rep = verify_minor_identities(v, random_dual_positive(rng, l, n, k));
    o.require(rep.ok() && rep.checked > 0, rep.violations.empty() ? "no instances" : rep.violations.front());
  }
  // The three values from the worked example are part of the fig2 bundle.
  auto r = repro::run("fig2", 1).at("checks");
  for (const char* key : {"delta_134_U_tilde", "delta_12_W_tilde", "delta_3_V_tilde"})
    o.require(r.at(key).get<bool>(), key);
  return o;
}

Outcome fiber_pentagon() {
  Outcome o;
  section_passes("fiber-pentagon", o);
  return o;
}

Outcome small_counting() {
  Outcome o;
  auto c4 = candidate_cells(4, 1, 2);
  std::vector<AffinePermutation> named{P("[2,1,3,4]"), P("[1,2,4,3]"), P("[1,3,2,4]"), P("[0,2,3,5]")};
  std::sort(named.begin(), named.end());
  o.require(c4 == named, "candidate_cells(4,1,2)");
  auto r4 = enumerate_triangulations(4, 1, 2, c4, 1);
  o.require(r4.triangulations.size() == 2 && r4.unresolved == 0, "(4,1,2) triangulation count");
  for (const auto& t : r4.triangulations) o.require(Z(static_cast<long>(t.cells.size())) == mplane(1, 1, 1), "(4,1,2) size");
  auto c5 = candidate_cells(5, 1, 2);
  o.require(c5.size() == 10, "candidate_cells(5,1,2)");
  auto r5 = enumerate_triangulations(5, 1, 2, c5, 1);
  o.require(r5.triangulations.size() == 5 && r5.unresolved == 0, "(5,1,2) triangulation count");
  for (const auto& t : r5.triangulations) o.require(Z(static_cast<long>(t.cells.size())) == mplane(1, 2, 1), "(5,1,2) size");
  for (const auto* run : {&r4, &r5})
    for (const auto& t : run->triangulations) {
      try {
        parity_dual(t, 7);
      } catch (const std::exception& e) {
        o.require(false, std::string("parity dual: ") + e.what());
      }
    }
  return o;
}

Outcome n6_experiment() {
  Outcome o;
  section_passes("n6-experiment", o);
  return o;
}

Outcome degree_test() {
  Outcome o;
  o.require(affine_stanley_coeff(P("[2,1,4,3,6,5,8,7]"), rectangle(2, 2)) == 2, "four-mass box coefficient");
  for (const auto& f : candidate_cells(6, 2, 2))
    o.require(affine_stanley_coeff(f, rectangle(2, 2)) == 1, "coefficient of " + f.str());
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k < n; ++k)
      for (int l = 1; k + l <= n; ++l)
        for (const auto& f : enumerate_bounded(n, k, n - k, static_cast<long>(k) * l))
          o.require(affine_stanley_coeff(f, rectangle(k, l)) == affine_stanley_coeff(f.inverse(), rectangle(l, k)),
                    "inversion symmetry at " + f.str());
  return o;
}

Outcome forms() {
  Outcome o;
  const std::tuple<int, int, int> shapes[] = {{1, 1, 4}, {2, 1, 5}, {1, 2, 5}, {2, 2, 6}};
  for (auto [k, l, n] : shapes) {
    auto rep = verify_top_pullback(k, l, n, 20, 11);
    o.require(rep.ok() && rep.checked == 20, "top pullback at (" + std::to_string(k) + "," + std::to_string(l) + "," +
                                                  std::to_string(n) + ")");
  }
  bool worked = false;
  for (const auto& f : enumerate_bounded(5, 2, 1)) {
    worked = worked || f == P("[2,1,3,5,4]");
    auto rep = verify_cell_pullback(f, 2, 1, 3, 31);
    o.require(rep.ok(), "cell pullback at " + f.str());
  }
  o.require(worked, "worked-example cell not enumerated");
  section_passes("quadrilateral-form", o);
  return o;
}

Outcome plane_partitions() {
  Outcome o;
  o.require(mplane(2, 2, 1) == 6 && mplane(2, 2, 2) == 20, "M(2,2,1), M(2,2,2)");
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (int c = 1; c <= 3; ++c)
        o.require(mplane(a, b, c) == brute_plane_partitions(a, b, c), "product formula vs brute force");
  for (int n = 5; n <= 10; ++n)
    for (int k = 1; n - k - 4 >= 1; ++k) o.require(narayana_check(n, k), "Narayana identity");
  return o;
}

Outcome positive_combination() {
  Outcome o;
  auto r = repro::run("fig2", 1);
  o.require(r.at("delta_13_alt_W_tilde") == "7/8", "value is not 7/8");
  o.require(r.at("checks").at("positive_combination_formula").get<bool>(), "formula disagrees");
  return o;
}

struct Criterion {
  const char* name;
  double budget_s;
  Outcome (*run)();
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {"golden twist", 1, golden_twist},
      {"roundtrip", 30, roundtrip},
      {"cell duality", 600, cell_duality},
      {"minor identities", 600, minor_identities},
      {"fiber pentagon", 600, fiber_pentagon},
      {"small counting", 60, small_counting},
      {"n=6 experiment", 1800, n6_experiment},
      {"degree test", 600, degree_test},
      {"forms", 300, forms},
      {"plane partitions", 600, plane_partitions},
      {"positive combination value", 600, positive_combination},
  };
  int failures = 0, i = 0;
  for (const auto& c : criteria) {
    ++i;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && s > c.budget_s) o.require(false, "over the " + std::to_string(c.budget_s) + " s budget");
    if (!o.ok) ++failures;
    std::printf("[%s] %2d %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", i, c.name, s, o.ok ? "" : ": ",
                o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", i - failures, i);
  return failures ? 1 : 0;
}
