#pragma once

// Canonical forms evaluated point-wise: a top form on a d-manifold is a
// number once a frame of d tangent vectors is fixed. All derivatives are
// exact first-order jets, so every value here is an exact rational.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "twistlab/fiber.hpp"
#include "twistlab/jet.hpp"
#include "twistlab/positroid.hpp"
#include "twistlab/triang.hpp"

namespace twistlab {

// d velocity vectors in some coordinate system; frame[j][i] = ξ_j(x_i).
using TangentFrame = std::vector<std::vector<Q>>;

TangentFrame coordinate_frame(std::size_t d);
TangentFrame random_frame(std::size_t d, std::uint64_t seed);  // nondegenerate, small integer entries
Q frame_det(const TangentFrame& frame);

// Coordinates x_i as jets along the frame.
std::vector<Jet> frame_jets(const std::vector<Q>& base, const TangentFrame& frame);

struct FormValue {
  Q value;
  std::string convention;  // which cluster/base/frame produced the value
};

// Rows ξ_j(log(Δ_J / Δ_{J_0})) for J in the cluster other than J_0.
// Throws std::domain_error if a cluster coordinate vanishes.
std::vector<std::vector<Q>> dlog_rows(const Cluster& c, const Cyclic<Jet>& x, std::size_t width);

// det of stacked dlog rows (must be square).
Q dlog_det(const std::vector<std::vector<Q>>& rows);

// ω on the positroid variety of the cluster, at a jet family of matrices.
Q canonical_form_on(const Cluster& c, const Cyclic<Jet>& x, std::size_t width);

struct ChartPoint {
  AffinePermutation f;
  int k = 0;
  std::vector<Q> params;  // Le-network weights
  Cluster cluster;
  CyclicMatrix X;
};

ChartPoint chart_point(const AffinePermutation& f, int k, std::vector<Q> params);
ChartPoint chart_point(const AffinePermutation& f, int k, std::vector<Q> params, const Cluster& c);

// Frame vectors in the cell's parameter coordinates; frame size must be the
// cell dimension. Defined up to sign.
FormValue eval_canonical_cell(const ChartPoint& pt, const TangentFrame& frame);

struct PullbackReport {
  long checked = 0;
  long same_sign = 0, opposite_sign = 0;  // observed, not asserted
  std::vector<int> sign_log;               // +1 / -1 per sample (0 on failure)
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Both sides of θ*(ω_{k;·} ∧ ω_{ℓ;·}) = ±(ω ∧ ω) at a jet family (V, W):
// first = (ω_{k;cell(V)} ∧ ω_{ℓ,n}∘alt)(V, W), second = (ω_{k,n}∘alt ∧ ω_{ℓ;f^{-1}})(θ(V, W)).
std::pair<Q, Q> stacked_pullback_values(const AffinePermutation& f, const Cyclic<Jet>& v, const Cyclic<Jet>& w,
                                        std::size_t width);

// Top cell × Gr^{⊥,>0}: random positive points and random frames.
PullbackReport verify_top_pullback(int k, int l, int n, int samples, std::uint64_t seed);

// Π_f × Gr^{⊥,>0} for f ∈ S̃_n(-k, ℓ), ℓ = n - k - m.
PullbackReport verify_cell_pullback(const AffinePermutation& f, int k, int l, int samples, std::uint64_t seed);

// τ on the top cell of Gr(k+ℓ, n) preserves ω_{k+ℓ,n} up to sign.
PullbackReport verify_twist_top_form(int k, int l, int n, int samples, std::uint64_t seed);

// Y as the row span of [I_k | X]; returns X (throws if Y_{[k]} is singular).
QMatrix y_chart_coords(const QMatrix& y);

// Z_*ω_f at Y, frame in the X-coordinates of y_chart_coords (row-major).
// With require_image = false the rational continuation is evaluated at any
// Y whose fiber point exists. Throws std::domain_error for Y on a facet or
// outside the image.
FormValue pushforward_eval(const AffinePermutation& f, const CyclicMatrix& z, const QMatrix& y,
                           const TangentFrame& frame, bool require_image = true);

struct CalibratedTriangulation {
  Triangulation T;
  CyclicMatrix Z;
  std::vector<int> signs;  // per cell: makes Z_*ω_f positive w.r.t. the coordinate volume form
};

CalibratedTriangulation calibrate(const Triangulation& t, const CyclicMatrix& z, std::uint64_t seed);

FormValue amplituhedron_form_eval(const CalibratedTriangulation& ct, const QMatrix& y, const TangentFrame& frame);
inline FormValue amplituhedron_form_eval(const Triangulation& t, const CyclicMatrix& z, const QMatrix& y,
                                         const TangentFrame& frame, std::uint64_t seed = 1) {
  return amplituhedron_form_eval(calibrate(t, z, seed), y, frame);
}

}  // namespace twistlab
