#pragma once

// Discrete hyperbolic area of a truncated triangle mesh, its analytic first
// variation, and descent minimization with backtracking line search.

#include <string>
#include <vector>

#include "hplateau/mesh.hpp"

namespace hplateau {

struct AreaReport {
  double area = 0;
  double grad_norm = 0;  // sup-norm over movable coordinates
  int iters = 0;
  bool converged = false;
  double min_waist_band_area = -1;  // filled by pinch detection when asked
  bool pinch_suspected = false;
};

enum class StepRule { gradient_descent, conjugate_gradient };
enum class CoordMask { all, z_only };

struct MinimizeOptions {
  double tol = 1e-6;        // gradient sup-norm
  int max_iters = 50000;
  StepRule step_rule = StepRule::gradient_descent;
  double armijo_c = 1e-4;
  // Scale descent directions by inverse lumped (hyperbolic) vertex mass;
  // equalizes the step scale between the heavy near-boundary region and
  // the interior.
  bool precondition_mass = true;
  // Reject trial steps that flip any triangle normal against its current
  // orientation; keeps the unsigned-area functional in its smooth regime.
  bool forbid_inversion = true;
  // Weight of the tangential redistribution term mixed into the descent
  // direction.  Tangential motion is a null direction of the continuous
  // functional, so without it the parametrization drifts and triangles
  // collapse; the combined direction still passes through the Armijo test.
  double tangential_redistribution = 0.5;
  CoordMask coords = CoordMask::all;
  bool detect_pinch = false;
  double pinch_band_threshold = 0.05;  // fraction of mean band area
};

// Sum over triangles of EuclideanArea * (1/3) sum over edge midpoints of
// 1/z_mid^2 (3-point midpoint rule, exact for quadratic variation of z^-2).
double hyperbolic_area(const TriMesh& m);

// Exact gradient of hyperbolic_area in the free vertex coordinates;
// fixed vertices get zero, slide vertices a zeroed y component.
std::vector<Vec3> area_gradient(const TriMesh& m);

// Armijo backtracking descent.  Monotone in area between accepted steps.
AreaReport minimize_area(TriMesh& m, const MinimizeOptions& opts = {});

}  // namespace hplateau
