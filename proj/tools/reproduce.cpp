#include "reproduce.hpp"

#include <map>
#include <stdexcept>

#include "twistlab/fiber.hpp"
#include "twistlab/forms.hpp"
#include "twistlab/rng.hpp"
#include "twistlab/triang.hpp"
#include "twistlab/twist.hpp"

namespace twistlab::repro {

namespace {

using io::json;

struct Checks {
  json j = json::object();
  bool all = true;
  void add(const std::string& name, bool ok) {
    j[name] = ok;
    all = all && ok;
  }
};

// The stacked example of Gr(2,5) × Gr(1,5).
CyclicMatrix example_v() { return CyclicMatrix(from_ints({{1, 0, 0, -2, -1}, {0, 1, 1, 2, 0}}), 1); }
CyclicMatrix example_w() { return CyclicMatrix(from_ints({{1, -1, 3, -2, 1}}), 1); }
const long kD[5] = {2, 4, 8, 10, 4};

QMatrix times_d(const QMatrix& m) {
  QMatrix r = m;
  for (std::size_t i = 0; i < r.rows(); ++i)
    for (std::size_t j = 0; j < r.cols(); ++j) r(i, j) *= kD[j];
  return r;
}

Q qabs(const Q& x) { return x < 0 ? Q(-x) : x; }

json fig2() {
  Checks c;
  const auto v = example_v(), w = example_w();
  const CyclicMatrix u(vstack(v.m, w.m), 1);
  c.add("window_minors", window_dets(u, 2, 1) == std::vector<Q>{-2, 4, -8, 10, -4});
  const auto ut = right_twist(u, 2, 1);
  const long table[3][9] = {{2, 0, -1, 4, -8, 2, 0, -1, 4}, {4, -2, 1, 0, -6, 4, -2, 1, 0}, {2, 0, 1, 0, 2, 2, 0, 1, 0}};
  bool cols = true;
  for (long j = -1; j <= 7; ++j)
    for (int i = 0; i < 3; ++i) cols = cols && ut.at(i, j) * kD[mod1(j, 5) - 1] == table[i][j + 1];
  c.add("twisted_columns", cols);
  const auto th = stacked_twist(v, w);
  c.add("W_tilde_times_D", times_d(th.Wt.m) == from_ints({{-1, 4, -8, 2, 0}, {1, 0, -6, 4, -2}}));
  c.add("V_tilde_times_D", times_d(th.Vt.m) == from_ints({{1, 0, 2, 2, 0}}));
  c.add("delta_134_U_tilde", qabs(ut.minor({1, 3, 4})) == Q(1, 8));
  c.add("delta_12_W_tilde", qabs(th.Wt.interval_minor(1, 3)) == Q(1, 2));
  c.add("delta_3_V_tilde", qabs(th.Vt.interval_minor(3, 4)) == Q(1, 4));
  const auto f = cell_of(v);
  c.add("cell_out_is_inverse", cell_of(th.Vt) == f.inverse());
  c.add("alt_W_tilde_totally_positive", tnn_membership(alt(th.Wt)) == TnnClass::TotallyPositive);
  c.add("roundtrip", left_twist(ut, 2, 1).m == u.m);

  const Q d13 = alt(th.Wt).plucker(make_subset({1, 3}));
  const Q p = 1, q = 1, r = 3, s = 2;
  const Q formula = (p * r * v.plucker(make_subset({2, 4})) + q * r * v.plucker(make_subset({1, 4})) +
                     p * s * v.plucker(make_subset({2, 3})) + q * s * v.plucker(make_subset({1, 3}))) /
                    (-u.plucker(make_subset({1, 2, 5})) * u.plucker(make_subset({2, 3, 4})));
  c.add("delta_13_alt_W_tilde", d13 == Q(7, 8));
  c.add("positive_combination_formula", formula == d13);

  return json{{"checks", c.j},
              {"pass", c.all},
              {"W_tilde", io::to_json(th.Wt)},
              {"V_tilde", io::to_json(th.Vt)},
              {"cell_in", f.str()},
              {"cell_out", cell_of(th.Vt).str()},
              {"delta_13_alt_W_tilde", io::to_json(d13)}};
}

json fiber_pentagon(std::uint64_t seed) {
  Checks c;
  const auto v = example_v(), w = example_w();
  const CyclicMatrix z(orthogonal_complement(w.m), 3);
  const auto base = stacked_twist(v, w);
  Rng rng(seed);
  bool printed = true, u_prime = true, consecutive = true, fixed_wt = true, shift = true;
  const int points = 25;
  for (int t = 0; t < points; ++t) {
    const Q a = rng.rational(), b = rng.rational();
    QMatrix am(2, 1);
    am(0, 0) = a, am(1, 0) = b;
    const CyclicMatrix vp(v.m + am * w.m, 1);
    // The printed stack U' = stack(V', W), entry by entry.
    QMatrix printed_u(2, 5);
    const Q row0[5] = {a + 1, -a, 3 * a, -2 * a - 2, a - 1}, row1[5] = {b, -b + 1, 3 * b + 1, -2 * b + 2, b};
    for (int j = 0; j < 5; ++j) printed_u(0, j) = row0[j], printed_u(1, j) = row1[j];
    u_prime = u_prime && printed_u == vp.m;
    for (Subset s : k_subsets(5, 2)) u_prime = u_prime && CyclicMatrix(printed_u, 1).plucker(s) == vp.plucker(s);
    auto d = [&](std::initializer_list<int> s) { return vp.plucker(make_subset(s)); };
    printed = printed && d({1, 2}) == a - b + 1 && d({2, 3}) == -4 * a && d({3, 4}) == 8 * a + 6 * b + 2 &&
              d({4, 5}) == -2 * a - 4 * b + 2 && d({1, 5}) == 2 * b && d({1, 3}) == a + 3 * b + 1;
    const auto tw = stacked_twist_unchecked(vp, w);
    fixed_wt = fixed_wt && tw.Wt.m == base.Wt.m;
    shift = shift && tw.Vt.m == base.Vt.m - am.transpose() * base.Wt.m;
    for (long j = 1; j <= 5; ++j) consecutive = consecutive && tw.Vt.at(0, j) * kD[j - 1] == vp.interval_minor(j, j + 2);
  }
  c.add("printed_stack", u_prime);
  c.add("printed_linear_forms", printed);
  c.add("W_tilde_constant_on_fiber", fixed_wt);
  c.add("V_tilde_shift", shift);
  c.add("consecutive_minors", consecutive);

  auto cl = claims(fiber_setup(v, z), enumerate_bounded(5, 2, 1, 2));
  std::vector<AffinePermutation> rot;
  const auto f = cell_of(v);
  for (int r = 0; r < 5; ++r) rot.push_back(f.rotate(r));
  std::sort(rot.begin(), rot.end());
  c.add("claims_are_rotations", cl.claimed == rot && cl.unresolved == 0);
  return json{{"checks", c.j}, {"pass", c.all}, {"points", points}, {"claims", io::to_json(cl.claimed)}};
}

QMatrix quad_zm(const Q& s, const Q& p, const Q& q) {
  QMatrix z(3, 4);
  z(0, 0) = 1, z(0, 1) = s;
  z(1, 1) = p, z(1, 2) = 1;
  z(2, 1) = -q, z(2, 3) = 1;
  return z;
}

json quadrilateral_form(std::uint64_t seed) {
  Checks c;
  Triangulation t1{4, 1, 2, {AffinePermutation::parse("[1,2,4,3]"), AffinePermutation::parse("[2,1,3,4]")}};
  Triangulation t2{4, 1, 2, {AffinePermutation::parse("[0,2,3,5]"), AffinePermutation::parse("[1,3,2,4]")}};
  std::sort(t1.cells.begin(), t1.cells.end());
  std::sort(t2.cells.begin(), t2.cells.end());
  auto closed = [](const Q& s, const Q& p, const Q& q, const Q& x, const Q& y) -> Q {
    return (q * s * x + p * s * y + p * q) / ((q * x + p * y) * (s * y + q) * x);
  };
  auto yrow = [](const Q& x, const Q& y) {
    QMatrix m(1, 3);
    m(0, 0) = 1, m(0, 1) = x, m(0, 2) = y;
    return m;
  };
  const auto frame = coordinate_frame(2);
  const CyclicMatrix z1(quad_zm(1, 1, 1), 2);
  const Q v1 = amplituhedron_form_eval(t1, z1, yrow(1, 1), frame).value;
  const Q v2 = amplituhedron_form_eval(t2, z1, yrow(1, 1), frame).value;
  c.add("all_ones_first", v1 == Q(3, 4));
  c.add("all_ones_second", v2 == Q(3, 4));
  json points = json::array();
  Rng rng(seed);
  bool agree = true;
  while (points.size() < 10) {
    const Q s = rng.positive_rational(), p = rng.positive_rational(), q = rng.positive_rational();
    const Q x = rng.rational(), y = rng.rational();
    if (q * x + p * y == 0 || s * y + q == 0) continue;
    const CyclicMatrix z(quad_zm(s, p, q), 2);
    const Q a = amplituhedron_form_eval(t1, z, yrow(x, y), frame, seed).value;
    const Q b = amplituhedron_form_eval(t2, z, yrow(x, y), frame, seed).value;
    const Q e = closed(s, p, q, x, y);
    agree = agree && a == e && b == e;
    points.push_back(json{{"s", io::to_json(s)}, {"p", io::to_json(p)}, {"q", io::to_json(q)}, {"x", io::to_json(x)},
                          {"y", io::to_json(y)}, {"value", io::to_json(a)}});
  }
  c.add("closed_form_both_triangulations", agree);
  return json{{"checks", c.j}, {"pass", c.all}, {"all_ones", io::to_json(v1)}, {"points", points}};
}

json n6_experiment(std::uint64_t seed) {
  Checks c;
  const auto cands = candidate_cells(6, 2, 2);
  c.add("cells", cands.size() == 48);
  bool coeff = true;
  for (const auto& f : cands) coeff = coeff && affine_stanley_coeff(f, rectangle(2, 2)) == 1;
  c.add("coefficients_one", coeff);
  auto run = enumerate_triangulations(6, 2, 2, cands, seed);
  std::map<std::string, long> sizes;
  for (const auto& t : run.triangulations) sizes[std::to_string(t.cells.size())]++;
  c.add("triangulations", run.triangulations.size() == 120);
  c.add("sizes", sizes == std::map<std::string, long>{{"6", 120}});
  c.add("stable", run.stable);
  c.add("unresolved", run.unresolved == 0);
  auto g = flip_graph(run.triangulations, 6, 2, 2, run.table.Z, seed);
  c.add("flip_vertices", g.vertices.size() == 120);
  c.add("flip_edges", g.edges.size() == 278);
  c.add("connected", g.connected());
  c.add("no_anomalies", g.anomalies.empty());
  return json{{"checks", c.j},
              {"pass", c.all},
              {"cells", cands.size()},
              {"triangulations", run.triangulations.size()},
              {"sizes", sizes},
              {"flip_vertices", g.vertices.size()},
              {"flip_edges", g.edges.size()},
              {"connected", g.connected()},
              {"unresolved", run.unresolved},
              {"samples", run.sample_counts.empty() ? 0 : run.sample_counts.back()}};
}

}  // namespace

std::vector<std::string> sections() { return {"fig2", "fiber-pentagon", "quadrilateral-form", "n6-experiment"}; }

io::json run(const std::string& section, std::uint64_t seed) {
  if (section == "fig2") return fig2();
  if (section == "fiber-pentagon") return fiber_pentagon(seed);
  if (section == "quadrilateral-form") return quadrilateral_form(seed);
  if (section == "n6-experiment") return n6_experiment(seed);
  throw std::invalid_argument("unknown section '" + section + "'");
}

}  // namespace twistlab::repro
