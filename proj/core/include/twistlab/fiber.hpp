#pragma once

// The amplituhedron map Y = V·Zᵗ, its fibers V' = V + A·W (W = Z^⊥), and
// per-cell fiber solving.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "twistlab/affperm.hpp"
#include "twistlab/cyclic.hpp"
#include "twistlab/positroid.hpp"

namespace twistlab {

// Moment-curve matrix (t_j^{i-1}) at random increasing positive rationals;
// all maximal minors positive (asserted).
CyclicMatrix sample_positive(int k, int n, std::uint64_t seed);

struct RankCollapse : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// k×(k+m) matrix V·Zᵗ; throws RankCollapse if its rank is below k.
QMatrix zmap(const QMatrix& v, const QMatrix& z);

// α(Y, Z, j) = det[y_1 … y_k | Z(j) … Z(j+m-1)] for j = 1..n, with the
// columns of Z extended by the sign rule of Gr(k+m, n).
std::vector<Q> boundary_sign_profile(const QMatrix& y, const CyclicMatrix& z);
std::vector<int> signs(const std::vector<Q>& xs);

// Everything about (V, Z) that all candidate cells share.
struct FiberSetup {
  int n = 0, k = 0, l = 0, m = 0;
  CyclicMatrix V;  // k×n, exponent k-1
  CyclicMatrix Z;  // (k+m)×n
  CyclicMatrix W;  // ℓ×n with rows spanning ker Z, exponent k-1
  std::vector<Subset> row_sets;  // k-subsets of [k+ℓ]: Plücker coordinates of X in V' = X·stack(V, W)
  std::vector<Subset> col_sets;  // k-subsets of [n]
  // cb[J][S] = Δ_{S,J}(stack(V, W)), so Δ_J(X·U) = Σ_S p_S(X) cb[J][S].
  std::vector<std::vector<Q>> cb;
};

// W is the exact kernel; alt(W) is asserted totally positive when Z is.
FiberSetup fiber_setup(const CyclicMatrix& v, const CyclicMatrix& z);
// Setup with a prescribed W (rows spanning ker Z), e.g. the twisted W̃.
FiberSetup fiber_setup(const CyclicMatrix& v, const CyclicMatrix& z, const CyclicMatrix& w);

enum class FiberStatus {
  ExactLinear,     // the vanishing conditions cut out a single point linearly
  ExactQuadratic,  // a pencil of solutions met with the Plücker quadric of Gr(2,4)
};

enum class FiberError {
  None,
  NoSolution,          // certified: the positroid variety misses the fiber (in the A-chart)
  NoRealSolution,      // certified: the only solutions are complex
  Ambiguous,           // more than one solution (the cell is not of degree 1 here)
  Unsupported,         // solution set not reducible to the exact cases
  VerificationFailed,  // candidate point fails the full vanishing check
};

const char* to_string(FiberStatus s);
const char* to_string(FiberError e);

struct FiberPoint {
  QMatrix A;            // k×ℓ
  AffinePermutation cell;
  FiberStatus status = FiberStatus::ExactLinear;
  CyclicMatrix Vp;      // V + A·W
};

struct FiberResult {
  FiberError error = FiberError::None;
  std::optional<FiberPoint> point;
  bool claimed = false;  // V' is TNN and lies in the open cell
  std::string detail;
  // Solver failure as opposed to a certified verdict.
  bool unresolved() const {
    return error == FiberError::Ambiguous || error == FiberError::Unsupported ||
           error == FiberError::VerificationFailed;
  }
};

FiberResult fiber_solve(const AffinePermutation& f, const FiberSetup& s);
inline FiberResult fiber_solve(const AffinePermutation& f, const CyclicMatrix& v, const CyclicMatrix& z) {
  return fiber_solve(f, fiber_setup(v, z));
}

struct ClaimSet {
  std::vector<AffinePermutation> claimed;      // sorted
  std::map<std::string, std::string> diagnostics;  // cell -> error, for unresolved cells only
  long unresolved = 0;
};

ClaimSet claims(const FiberSetup& s, const std::vector<AffinePermutation>& candidates);

struct ClaimTable {
  int n = 0, k = 0, m = 0;
  std::uint64_t seed = 0;
  CyclicMatrix Z;
  std::vector<AffinePermutation> candidates;
  std::vector<ClaimSet> samples;
  long unresolved() const;
  // V for sample i: even i from the top cell, odd i from the candidate
  // cells in turn (so every chamber of every candidate image gets sampled).
  CyclicMatrix sample_point(std::size_t i) const;
};

// Random points with positive weights spread over many orders of magnitude.
CyclicMatrix sample_top_cell(int k, int n, std::uint64_t seed, std::uint64_t index);
CyclicMatrix sample_in_cell(const AffinePermutation& f, int k, std::uint64_t seed, std::uint64_t index);

ClaimTable claim_table(int n, int k, int m, const std::vector<AffinePermutation>& candidates, std::size_t samples,
                       std::uint64_t seed);
// Extends an existing table with more samples (same Z and seed).
void extend_claim_table(ClaimTable& t, std::size_t samples);

struct FiberTwistReport {
  long checked = 0;
  long tnn_agree = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// On sampled shifts A: θ(V+AW, W) = (W̃, Ṽ - Aᵗ W̃) exactly, and V+AW is
// TNN iff Ṽ - Aᵗ W̃ is.
FiberTwistReport fiber_twist_check(const CyclicMatrix& v, const CyclicMatrix& z, int shifts, std::uint64_t seed);

// Derivative of the fiber point along Y: for a jet lift V(x) of points with
// V(x)·Zᵗ varying, returns V'(x) = V(x) + A(x)·W to first order, where A(x)
// keeps the non-positroid minors of f at zero (implicit function theorem on
// a full-rank square subsystem).
Cyclic<Jet> fiber_point_jet(const AffinePermutation& f, const FiberSetup& s, const QMatrix& a0,
                            const Cyclic<Jet>& v_jet);

}  // namespace twistlab
