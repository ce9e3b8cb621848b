#pragma once

// Positroid combinatorics of a cell Π_f ⊂ Gr≥0(k, n) indexed by an affine
// permutation f ∈ S̃_n(-k, n-k).

#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "twistlab/affperm.hpp"
#include "twistlab/cyclic.hpp"
#include "twistlab/plucker.hpp"
#include "twistlab/subsets.hpp"

namespace twistlab {

struct GrassmannNecklace {
  int n = 0, k = 0;
  std::vector<Subset> I;  // I[i-1] = I_i
};

GrassmannNecklace necklace_of(const AffinePermutation& f, int k);

// A ≤_i B in the Gale order that starts at i and runs cyclically.
bool gale_leq(int i, Subset a, Subset b, int n);

struct Positroid {
  int n = 0, k = 0;
  std::vector<Subset> bases;  // lexicographic order
  bool contains(Subset s) const;
};

Positroid positroid_of(const AffinePermutation& f, int k);

struct NotTNN : std::runtime_error {
  Subset witness_pos, witness_neg;
  NotTNN(Subset p, Subset q, const std::string& msg) : std::runtime_error(msg), witness_pos(p), witness_neg(q) {}
};

// All Plücker coordinates have one weak sign. Returns +1/-1 for that sign
// (the global scalar), or throws NotTNN naming one coordinate of each sign.
int tnn_sign(const PluckerVector& p);

// The f with V ∈ Π_f, via the span formula and checked against the rank
// characterization.
AffinePermutation cell_of(const CyclicMatrix& v);
AffinePermutation cell_of(const QMatrix& v);

// rk(V; a, b) = #{ i < a : a ≤ f(i) + k < b } for 1 ≤ a ≤ n, a < b ≤ a + n.
bool satisfies_rank_characterization(const CyclicMatrix& v, const AffinePermutation& f);

bool is_weakly_separated(Subset s, Subset t, int n);

// ---------------------------------------------------------------- Le-diagrams

struct LeDiagram {
  int n = 0, k = 0;
  Subset sources = 0;               // I_1: labels of the vertical boundary steps
  std::vector<int> row_label;       // boundary label of row r (0-based rows)
  std::vector<int> col_label;       // boundary label of column c (0-based, left to right)
  std::vector<int> shape;           // row lengths
  std::vector<int> col_height;      // column heights
  std::vector<std::vector<char>> plus;  // plus[r][c] for c < shape[r]

  int num_plus() const;
  bool le_condition() const;
  // Boxes with a '+', row-major; parameters of parametrize_cell follow this order.
  std::vector<std::pair<int, int>> plus_boxes() const;
};

// Empty diagram of the shape determined by the source set I_1.
LeDiagram le_shape(int n, int k, Subset sources);

// The unique Le-diagram of the cell (cached).
const LeDiagram& le_diagram_of(const AffinePermutation& f, int k);

// Boundary-measurement matrix of the Le-network with one weight per '+' box
// (on the horizontal edge entering the box from the east).
template <class T>
Matrix<T> le_network_matrix(const LeDiagram& d, const std::vector<T>& weights);

// Reduced plabic graph of a Le-diagram (its Le-graph), drawn with box (r, c)
// at (c, -r) and boundary vertices on the midpoints of the boundary path.
struct PlabicGraph {
  enum Colour { Boundary, White, Black };
  struct Vertex {
    double x = 0, y = 0;
    Colour colour = Boundary;
    int label = 0;              // boundary label, 0 for internal vertices
    std::vector<int> nbrs;      // sorted counterclockwise
  };
  int n = 0, k = 0;
  std::vector<Vertex> vertices;
  std::vector<int> trip;                    // trip[i-1]: end label of the trip from i (i for lollipops)
  std::vector<std::vector<int>> trip_path;  // vertex ids along each trip
  std::vector<Subset> face_labels;          // faces in Le-box order, then the north-west face
  int internal_faces() const { return static_cast<int>(face_labels.size()); }
};

PlabicGraph plabic_graph_of(const LeDiagram& d);

// The cell parametrized by a Le-diagram, read off from its trips.
AffinePermutation le_trip_permutation(const LeDiagram& d);

// ----------------------------------------------------------------- clusters

struct Cluster {
  int n = 0, k = 0;
  Subset base = 0;              // J_0
  std::vector<Subset> members;  // includes J_0 and the necklace
};

// Face labels of the Le-diagram's plabic graph (asserts the documented
// postconditions).
const Cluster& cluster_of(const AffinePermutation& f, int k);

// A different maximal weakly separated collection inside the positroid,
// containing the necklace, grown greedily in a seed-dependent order.
Cluster greedy_cluster(const AffinePermutation& f, int k, unsigned long seed);

// ---------------------------------------------------------- parametrization

int cell_dimension(const AffinePermutation& f, int k);  // k(n-k) - inv(f)

CyclicMatrix parametrize_cell(const AffinePermutation& f, int k, const std::vector<Q>& params);
Cyclic<Jet> parametrize_cell_jet(const AffinePermutation& f, int k, const std::vector<Jet>& params);

enum class TnnClass { NotTNN, TNN, TotallyPositive, InGrGeM };
const char* to_string(TnnClass c);

TnnClass tnn_membership(const CyclicMatrix& v, std::optional<int> m = std::nullopt);

// For every j there are I ∈ M_f and J ∈ M_g with I ∪ J = [j-ℓ, j+k) mod n.
bool is_stackable(const AffinePermutation& f, int k, const AffinePermutation& g, int l);

}  // namespace twistlab
