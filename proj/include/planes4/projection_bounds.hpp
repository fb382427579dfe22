#pragma once

#include <cstddef>
#include <cstdint>

#include "planes4/exterior_algebra.hpp"
#include "planes4/grassmann.hpp"

namespace planes4 {

/// Result of a supremum search of |p1 xi| + |p2 xi| over unit simple xi.
struct BoundReport {
  double sup_value = 0.0;
  TwoVector argmax;
  double bound = 0.0;  // 1 + 2 cos(alpha1) for the searched pair
  std::size_t samples = 0;
  int refinement_iters = 0;
};

/// Grid-then-ascent configuration. The grid has `grid` nodes per angle of the
/// reduced orthonormal-pair chart (see sup_projection_sum), so grid^4 points.
struct SearchConfig {
  int grid = 48;
  int ascent_steps = 200;
  int grid_starts = 8;    // best grid cells refined by ascent
  int random_starts = 4;  // extra seeded starts
  std::uint64_t seed = 1;
};

// |p1 xi| + |p2 xi| computed through the induced maps of the projectors.
// Throws ConfigError unless xi is unit simple within 1e-9.
double projection_sum(const Plane& p1, const Plane& p2, const TwoVector& xi);

// Supremum of projection_sum over unit simple 2-vectors, parametrized as
// x ^ y with (x, y) orthonormal. Coarse stage: x is the unit vector of the
// plane inside e4-perp, x = (sin t1 cos f1, sin t1 sin f1, cos t1, 0), and y
// = sin t2 cos f2 F1 + sin t2 sin f2 F2 + cos t2 e4 in the spherical frame
// (F1, F2, e4) of x-perp; t in [0, pi/2], f in [0, 2 pi). Fine stage:
// coordinate ascent on the raw 8 coordinates of (x, y), re-orthonormalized
// by Gram-Schmidt, with step halving. Deterministic for a given config.
BoundReport sup_projection_sum(const Plane& p1, const Plane& p2,
                               const SearchConfig& cfg = {});

// 1 + 2 cos(alpha1), alpha1 in [0, pi/2].
double wirtinger_bound(double alpha1);

// arccos(eps / 2) for 0 < eps <= 2.
double angle_threshold(double eps);

// 2 pi / (1 + eps) for eps >= 0.
double area_lower_bound(double eps);

}  // namespace planes4
