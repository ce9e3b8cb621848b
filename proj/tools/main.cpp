// twistlab: command-line front end. JSON on stdout (or --out), diagnostics on
// stderr. Exit codes: 0 success, 1 a verification failed, 2 usage/input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "json_io.hpp"
#include "reproduce.hpp"
#include "twistlab/fiber.hpp"
#include "twistlab/forms.hpp"
#include "twistlab/triang.hpp"
#include "twistlab/twist.hpp"

using namespace twistlab;
using io::json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Options {
  std::string out;
  std::uint64_t seed = 1;
  int precision = 0;  // accepted for compatibility; every solver here is exact
  int n = 0, k = 0, m = -1, l = -1;
  long inv = -1;
  std::size_t samples = 0;
  bool degree1 = false, unchecked = false;
  std::string f, vpath, wpath, zpath, spec, dot, section;
  std::vector<int> abc;
};

int ell(const Options& o) {
  if (o.m < 0) throw UsageError("--m is required");
  const int l = o.n - o.k - o.m;
  if (o.k < 1 || l < 0 || o.m % 2 != 0) throw UsageError("need k >= 1, l = n-k-m >= 0 and m even");
  return l;
}

json cmd_mplane(const Options& o) {
  if (o.abc.size() != 3) throw UsageError("mplane takes three positive integers");
  return json{{"value", io::to_json(mplane(o.abc[0], o.abc[1], o.abc[2]))}};
}

json cmd_cells(const Options& o) {
  std::vector<AffinePermutation> cells;
  if (o.degree1) {
    ell(o);
    cells = candidate_cells(o.n, o.k, o.m);
  } else {
    const int l = o.m >= 0 ? ell(o) : o.n - o.k;
    std::optional<long> inv;
    if (o.inv >= 0) inv = o.inv;
    cells = enumerate_bounded(o.n, o.k, l, inv);
  }
  return json{{"count", cells.size()}, {"cells", io::to_json(cells)}};
}

json cmd_cell(const Options& o) {
  const auto f = AffinePermutation::parse(o.f);
  if (!f.in_class(o.k, f.n() - o.k)) throw UsageError(f.str() + " is not a cell of Gr(k, n)");
  const auto neck = necklace_of(f, o.k);
  const auto& c = cluster_of(f, o.k);
  json j{{"f", f.str()},
         {"n", f.n()},
         {"k", o.k},
         {"inversions", f.inversions()},
         {"dimension", cell_dimension(f, o.k)},
         {"inverse", f.inverse().str()},
         {"necklace", io::to_json(neck.I)},
         {"positroid", io::to_json(positroid_of(f, o.k).bases)},
         {"le_diagram", io::to_json(le_diagram_of(f, o.k))},
         {"cluster", io::to_json(c.members)},
         {"cluster_base", io::to_json(c.base)}};
  if (o.l >= 0) j["rectangle_coefficient"] = affine_stanley_coeff(f, rectangle(o.k, o.l));
  return j;
}

json cmd_twist(const Options& o) {
  const auto v = io::matrix_from_json(io::read_file(o.vpath));
  const auto w = io::matrix_from_json(io::read_file(o.wpath));
  const int k = static_cast<int>(v.rows());
  const CyclicMatrix vk(v.m, k - 1), wk(w.m, k - 1);
  TwistedPair th = o.unchecked ? stacked_twist_unchecked(vk, wk) : stacked_twist(vk, wk);
  json j{{"W_tilde", io::to_json(th.Wt)}, {"V_tilde", io::to_json(th.Vt)}};
  try {
    j["cell_in"] = cell_of(vk).str();
    j["cell_out"] = cell_of(th.Vt).str();
  } catch (const NotTNN&) {
    j["cell_in"] = nullptr;
    j["cell_out"] = nullptr;
  }
  return j;
}

json claim_json(const ClaimSet& c) {
  json diag = json::object();
  for (const auto& [cell, why] : c.diagnostics) diag[cell] = why;
  return json{{"claimed", io::to_json(c.claimed)}, {"diagnostics", diag}};
}

json cmd_fibers_claims(const Options& o, int& code) {
  ell(o);
  const std::size_t samples = o.samples ? o.samples : 20;
  auto t = claim_table(o.n, o.k, o.m, candidate_cells(o.n, o.k, o.m), samples, o.seed);
  json pts = json::array(), cl = json::object(), diag = json::object();
  for (std::size_t i = 0; i < t.samples.size(); ++i) {
    pts.push_back(json{{"id", i}, {"V", io::to_json(t.sample_point(i))}});
    cl[std::to_string(i)] = io::to_json(t.samples[i].claimed);
    if (!t.samples[i].diagnostics.empty()) diag[std::to_string(i)] = claim_json(t.samples[i])["diagnostics"];
  }
  if (t.unresolved() > 0) {
    std::cerr << "fibers: " << t.unresolved() << " unresolved solver verdicts\n";
    code = 1;
  }
  return json{{"Z", io::to_json(t.Z)}, {"samples", pts}, {"claims", cl}, {"diagnostics", diag},
              {"unresolved", t.unresolved()}};
}

json cmd_fibers_solve(const Options& o) {
  const auto f = AffinePermutation::parse(o.f);
  const auto v = io::matrix_from_json(io::read_file(o.vpath));
  const auto z = io::matrix_from_json(io::read_file(o.zpath));
  const int k = static_cast<int>(v.rows());
  auto r = fiber_solve(f, CyclicMatrix(v.m, k - 1), CyclicMatrix(z.m, static_cast<int>(z.rows()) - 1));
  json j{{"cell", f.str()}, {"error", to_string(r.error)}, {"claimed", r.claimed}, {"detail", r.detail}};
  if (r.point) {
    j["A"] = io::to_json(r.point->A);
    j["V_prime"] = io::to_json(r.point->Vp);
    j["status"] = to_string(r.point->status);
  }
  return j;
}

json cmd_triang_enumerate(const Options& o, int& code) {
  ell(o);
  auto run = enumerate_triangulations(o.n, o.k, o.m, candidate_cells(o.n, o.k, o.m), o.seed, o.samples);
  json ts = json::array();
  std::map<std::string, long> hist;
  for (const auto& t : run.triangulations) {
    ts.push_back(io::to_json(t.cells));
    hist[std::to_string(t.cells.size())]++;
  }
  if (run.unresolved > 0 || !run.stable) {
    std::cerr << "triang: " << (run.stable ? "" : "sampling did not stabilize; ") << run.unresolved
              << " unresolved solver verdicts\n";
    code = 1;
  }
  return json{{"count", run.triangulations.size()}, {"size_histogram", hist}, {"triangulations", ts},
              {"stable", run.stable}, {"unresolved", run.unresolved}, {"sample_counts", run.sample_counts}};
}

json cmd_triang_flips(const Options& o, int& code) {
  ell(o);
  auto run = enumerate_triangulations(o.n, o.k, o.m, candidate_cells(o.n, o.k, o.m), o.seed, o.samples);
  auto g = flip_graph(run.triangulations, o.n, o.k, o.m, run.table.Z, o.seed);
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back(json{{"a", "T" + std::to_string(e.a + 1)}, {"b", "T" + std::to_string(e.b + 1)},
                         {"witness", e.witness.str()}});
  json verts = json::object();
  for (std::size_t i = 0; i < g.vertices.size(); ++i) verts["T" + std::to_string(i + 1)] = io::to_json(g.vertices[i].cells);
  if (!o.dot.empty()) {
    std::ofstream d(o.dot);
    if (!d) throw UsageError("cannot write " + o.dot);
    d << g.dot();
  }
  if (run.unresolved > 0 || !g.anomalies.empty()) code = 1;
  return json{{"vertices", verts}, {"edges", edges}, {"connected", g.connected()}, {"anomalies", g.anomalies},
              {"dot", g.dot()}};
}

json report_json(const PullbackReport& r, int& code) {
  if (!r.ok()) code = 1;
  return json{{"checked", r.checked}, {"failures", r.violations.size()}, {"violations", r.violations},
              {"sign_log", r.sign_log}};
}

json cmd_forms_top(const Options& o, int& code) {
  if (o.l < 0) throw UsageError("--l is required");
  const std::size_t samples = o.samples ? o.samples : 20;
  return report_json(verify_top_pullback(o.k, o.l, o.n, static_cast<int>(samples), o.seed), code);
}

json cmd_forms_cell(const Options& o, int& code) {
  if (o.l < 0) throw UsageError("--l is required");
  const int samples = static_cast<int>(o.samples ? o.samples : 10);
  std::vector<AffinePermutation> cells;
  if (!o.f.empty())
    cells.push_back(AffinePermutation::parse(o.f));
  else
    cells = enumerate_bounded(o.n, o.k, o.l);
  PullbackReport all;
  json per = json::object();
  for (const auto& f : cells) {
    auto r = verify_cell_pullback(f, o.k, o.l, samples, o.seed);
    per[f.str()] = r.ok();
    all.checked += r.checked;
    for (auto& v : r.violations) all.violations.push_back(v);
    all.sign_log.insert(all.sign_log.end(), r.sign_log.begin(), r.sign_log.end());
  }
  json j = report_json(all, code);
  j["cells"] = per;
  return j;
}

// Input file: {"Z": matrix, "Y": matrix, "triangulation": ["[..]", ...], "frame": [[..]] (optional)}.
json cmd_forms_ampl(const Options& o) {
  const json s = io::read_file(o.spec);
  const auto z = io::matrix_from_json(s.at("Z"));
  const auto y = io::matrix_from_json(s.at("Y"));
  const int k = static_cast<int>(y.rows()), m = static_cast<int>(z.rows()) - k;
  Triangulation t{z.n(), k, m, {}};
  for (const auto& c : s.at("triangulation")) t.cells.push_back(AffinePermutation::parse(c.get<std::string>()));
  std::sort(t.cells.begin(), t.cells.end());
  TangentFrame frame = coordinate_frame(static_cast<std::size_t>(k * m));
  if (s.contains("frame")) {
    frame.clear();
    for (const auto& v : s.at("frame")) {
      std::vector<Q> vec;
      for (const auto& x : v) vec.push_back(io::rational_from_json(x));
      frame.push_back(vec);
    }
  }
  auto ct = calibrate(t, CyclicMatrix(z.m, k + m - 1), o.seed);
  auto val = amplituhedron_form_eval(ct, y.m, frame);
  return json{{"value", io::to_json(val.value)}, {"convention", val.convention}, {"cell_signs", ct.signs}};
}

json cmd_reproduce(const Options& o, int& code) {
  json j = repro::run(o.section, o.seed);
  if (!j.at("pass").get<bool>()) code = 1;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"twistlab: stacked twists, positroid cells, amplituhedron triangulations and canonical forms"};
  app.require_subcommand(1, 2);
  app.fallthrough();  // global options may follow the subcommand
  Options o;
  if (const char* env = std::getenv("TWISTLAB_PRECISION_BITS")) o.precision = std::atoi(env);
  app.add_option("--out", o.out, "write JSON here instead of standard output");
  app.add_option("--seed", o.seed, "random seed")->capture_default_str();
  app.add_option("--precision", o.precision, "precision budget in bits (no effect: all solvers are exact)");

  auto nkm = [&](CLI::App* s, bool need_m) {
    s->add_option("--n", o.n, "number of columns")->required();
    s->add_option("--k", o.k, "rank")->required();
    auto mo = s->add_option("--m", o.m, "even amplituhedron parameter");
    if (need_m) mo->required();
  };

  auto* mp = app.add_subcommand("mplane", "plane partitions in an a x b x c box");
  mp->add_option("abc", o.abc, "a b c")->required()->expected(3);

  auto* cells = app.add_subcommand("cells", "enumerate cells");
  cells->require_subcommand(1);
  auto* cells_enum = cells->add_subcommand("enumerate", "cells of S_n(-k, l), or degree-1 candidates");
  nkm(cells_enum, false);
  cells_enum->add_flag("--degree1", o.degree1, "only cells with inv = k*l and rectangle coefficient 1");
  cells_enum->add_option("--inv", o.inv, "only cells with this many inversions");

  auto* cell = app.add_subcommand("cell", "combinatorics of one positroid cell");
  cell->add_option("--f", o.f, "window notation, e.g. [2,3,1,5,4]")->required();
  cell->add_option("--k", o.k, "rank")->required();
  cell->add_option("--l", o.l, "also report the coefficient of the l^k rectangle");

  auto* tw = app.add_subcommand("twist", "stacked twist of V and W (matrix JSON files)");
  tw->add_option("--V", o.vpath)->required()->check(CLI::ExistingFile);
  tw->add_option("--W", o.wpath)->required()->check(CLI::ExistingFile);
  tw->add_flag("--unchecked", o.unchecked, "skip the positivity preconditions");

  auto* fib = app.add_subcommand("fibers", "fiber points and claim tables");
  fib->require_subcommand(1);
  auto* fib_claims = fib->add_subcommand("claims", "claim table over the degree-1 candidates");
  nkm(fib_claims, true);
  fib_claims->add_option("--samples", o.samples);
  auto* fib_solve = fib->add_subcommand("solve", "fiber point of one cell over V");
  fib_solve->add_option("--f", o.f)->required();
  fib_solve->add_option("--V", o.vpath)->required()->check(CLI::ExistingFile);
  fib_solve->add_option("--Z", o.zpath)->required()->check(CLI::ExistingFile);

  auto* tri = app.add_subcommand("triang", "triangulations and flips");
  tri->require_subcommand(1);
  auto* tri_enum = tri->add_subcommand("enumerate", "all triangulations by exact hitting sets");
  nkm(tri_enum, true);
  tri_enum->add_option("--samples", o.samples, "initial sample count");
  auto* tri_flips = tri->add_subcommand("flips", "flip graph of the triangulations");
  nkm(tri_flips, true);
  tri_flips->add_option("--samples", o.samples, "initial sample count");
  tri_flips->add_option("--dot", o.dot, "also write the DOT graph here");

  auto* forms = app.add_subcommand("forms", "canonical form checks");
  forms->require_subcommand(1);
  auto* f_top = forms->add_subcommand("check-top", "top-cell form under the stacked twist");
  auto* f_cell = forms->add_subcommand("check-cell", "lower-cell forms under the stacked twist");
  for (auto* s : {f_top, f_cell}) {
    s->add_option("--n", o.n)->required();
    s->add_option("--k", o.k)->required();
    s->add_option("--l", o.l)->required();
    s->add_option("--samples", o.samples);
  }
  f_cell->add_option("--f", o.f, "one cell (default: all cells of the class)");
  auto* f_ampl = forms->add_subcommand("ampl-eval", "amplituhedron form at a point");
  f_ampl->add_option("--spec", o.spec)->required()->check(CLI::ExistingFile);

  auto* rep = app.add_subcommand("reproduce", "golden checks of the worked examples");
  rep->add_option("section", o.section)->required()->check(CLI::IsMember(repro::sections()));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  int code = 0;
  json out;
  try {
    if (*mp) out = cmd_mplane(o);
    else if (*cells_enum) out = cmd_cells(o);
    else if (*cell) out = cmd_cell(o);
    else if (*tw) out = cmd_twist(o);
    else if (*fib_claims) out = cmd_fibers_claims(o, code);
    else if (*fib_solve) out = cmd_fibers_solve(o);
    else if (*tri_enum) out = cmd_triang_enumerate(o, code);
    else if (*tri_flips) out = cmd_triang_flips(o, code);
    else if (*f_top) out = cmd_forms_top(o, code);
    else if (*f_cell) out = cmd_forms_cell(o, code);
    else if (*f_ampl) out = cmd_forms_ampl(o);
    else if (*rep) out = cmd_reproduce(o, code);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  }

  const std::string text = io::dump(out);
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out);
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      return 2;
    }
    f << text;
  }
  if (code != 0) std::cerr << "verification failed\n";
  return code;
}
