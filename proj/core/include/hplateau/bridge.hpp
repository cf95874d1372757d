#pragma once

// Bridges at infinity: thin tubes attached orthogonally along an arc
// between boundary points, whose junction blow-ups are skillet boundaries
// and whose mid-tube blow-ups are two parallel lines.

#include <string>
#include <vector>

#include "hplateau/curves.hpp"

namespace hplateau {

// Profile of the model skillet boundary: u(x) = infinity iff |x| <= 1,
// u supported on [-R, R], u smooth and convex on the finite part with
// infinite-order tangency at |x| = R.
struct SkilletProfile {
  double support_radius = 2.0;  // R > 1
  double height = 1.0;          // u at the midpoint (1+R)/2

  double eval(double x) const;           // u(|x|); large finite cap near |x|=1
  double inverse(double y) const;        // xi(y) in (1, R] with u(xi) = y
  bool convex_on_finite_part(int samples = 2000) const;
  // polyline of the boundary of {y <= u(x)} inside |x| <= x_max, 0 <= y <= y_max
  std::vector<Vec2> boundary_polyline(double x_max, double y_max, int n) const;
};

// skilletBoundary operation: concrete profile for a given support radius
// and height.  Throws if support_radius <= 1.
SkilletProfile skillet_boundary(double support_radius, double height);

struct JunctionFrame {
  Vec2 origin;   // junction point on the base curve
  Vec2 along;    // unit tangent of the base curve (the local x axis)
  Vec2 inward;   // unit arc direction into the bridge (the local y axis)
};

struct BridgeSpec {
  IdealArc arc;        // the core arc Gamma
  double width = 0;    // declared Euclidean width w(P)
  double cap_scale = 0;    // base scale c of the junction profile
  JunctionFrame frame_a, frame_b;
  std::vector<Vec2> tube_polygon;  // closed polygon of the bridge P

  // sup over sampled interior points of P of the distance to its boundary
  double measured_width(int grid = 64) const;
};

struct BridgeFamily {
  std::vector<IdealCurveSet> boundaries;  // dS symmetric-difference dP_i
  std::vector<BridgeSpec> specs;
};

// Builds the family of bridge surgeries along `arc` for each width.
// Preconditions: arc endpoints on `base` and orthogonal junctions (1e-3),
// widths strictly decreasing and positive; the tube must stay clear of the
// rest of the curve set.
BridgeFamily make_bridge_family(const IdealCurveSet& base, const IdealArc& arc,
                                const std::vector<double>& widths);

struct ShrinkSample {
  double width = 0;
  double dist_parallel_lines = 0;
  double dist_skillet = 0;
  std::string classification;  // "parallel-lines" or "skillet"
};

struct ShrinkReport {
  std::vector<ShrinkSample> samples;
  bool monotone = true;
  bool failed = false;
  std::string reason;
};

// Rescales (curve - x_i) by 1/w_i inside a fixed window and measures the
// Hausdorff distance to two parallel lines at distance 2 and to the model
// skillet boundary with its junction at the window center.
ShrinkReport check_nicely_shrinking(const BridgeFamily& family,
                                    const std::vector<Vec2>& sample_points,
                                    double window = 6.0);

}  // namespace hplateau
