#pragma once

// Degree-1 candidate cells, triangulations as exact hitting sets of claim
// tables, parity duality, flips, and plane-partition counts.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "twistlab/affperm.hpp"
#include "twistlab/fiber.hpp"
#include "twistlab/rational.hpp"

namespace twistlab {

// Plane partitions in an a×b×c box (MacMahon's product formula).
Z mplane(int a, int b, int c);

// M(k, ℓ, 2) = C(n-3, k+1) C(n-3, k) / (n-3) for m = 4, ℓ = n-k-4 ≥ 1.
bool narayana_check(int n, int k);

using Partition = std::vector<int>;

std::vector<Partition> partitions(int d);  // lexicographically decreasing
long kostka(const Partition& shape, const Partition& content);

// Affine Stanley symmetric function of f, degree inv(f): coefficients of the
// monomial and Schur bases.
struct SymmetricFunctionTruncation {
  long degree = 0;
  std::map<Partition, long> monomial;
  std::map<Partition, long> schur;
  long coeff(const Partition& lambda) const;
};

// Counts factorizations f = f_1 f_2 ⋯ f_r (f_1 applied last) into cyclically
// decreasing, length-additive factors. Cached.
const SymmetricFunctionTruncation& affine_stanley(const AffinePermutation& f);

// Coefficient of s_λ in the affine Stanley function; λ = ℓ^k for the degree test.
long affine_stanley_coeff(const AffinePermutation& f, const Partition& lambda);
Partition rectangle(int rows, int cols);  // cols^rows

// f ∈ S̃_n(-k, ℓ), inv(f) = kℓ, coefficient of s_{ℓ^k} equal to 1.
std::vector<AffinePermutation> candidate_cells(int n, int k, int m);

struct Triangulation {
  int n = 0, k = 0, m = 0;
  std::vector<AffinePermutation> cells;  // sorted
  friend bool operator==(const Triangulation& a, const Triangulation& b) { return a.cells == b.cells; }
  friend bool operator<(const Triangulation& a, const Triangulation& b) { return a.cells < b.cells; }
  std::string str() const;
};

// All subsets of `cells` meeting every claim set exactly once (claim sets
// given as indices into `cells`), sorted.
std::vector<std::vector<int>> exact_hitting_sets(int num_cells, const std::vector<std::vector<int>>& claim_sets);

std::vector<Triangulation> enumerate_triangulations(const ClaimTable& table);

struct TriangulationRun {
  std::vector<Triangulation> triangulations;
  std::vector<std::size_t> sample_counts;  // per round
  std::vector<std::size_t> found_counts;   // per round
  bool stable = false;                     // last two rounds agreed
  long unresolved = 0;
  ClaimTable table;                        // the final table (its Z is the one used)
};

// Starts from max(initial, 4·|candidates|) samples and doubles until two
// consecutive rounds agree (at most max_rounds rounds).
TriangulationRun enumerate_triangulations(int n, int k, int m, const std::vector<AffinePermutation>& candidates,
                                          std::uint64_t seed, std::size_t initial = 0, int max_rounds = 10);

// The inverse collection, re-verified against an independent (n, ℓ, m)
// claim table; throws std::logic_error if it fails.
Triangulation parity_dual(const Triangulation& t, std::uint64_t seed, std::size_t samples = 200);

struct FlipEdge {
  int a = 0, b = 0;  // indices into vertices, a < b
  AffinePermutation witness;
};

struct LocalTriangulations {
  AffinePermutation g;
  std::vector<AffinePermutation> boundary;          // degree-1 cells h covering g
  std::vector<std::vector<AffinePermutation>> local;  // exact hitting sets on fibers over Z(Π_g)
};

struct FlipGraph {
  std::vector<Triangulation> vertices;
  std::vector<FlipEdge> edges;
  std::vector<LocalTriangulations> witnesses;  // every nearly-admissible g examined
  std::vector<std::string> anomalies;          // g with a number of local triangulations other than 2
  bool connected() const;
  std::string dot() const;
};

// Rank of d(Y-chart ∘ Z ∘ parametrize_cell) at a random positive point.
int image_dimension(const AffinePermutation& g, int k, const CyclicMatrix& z, std::uint64_t seed);

FlipGraph flip_graph(const std::vector<Triangulation>& triangulations, int n, int k, int m, const CyclicMatrix& z,
                     std::uint64_t seed);

}  // namespace twistlab
