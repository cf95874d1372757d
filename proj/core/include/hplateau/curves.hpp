#pragma once

// Ideal boundary data: piecewise-smooth curves and regions in the plane
// z = 0 (plus the point at infinity), curve surgery, and lifting to the
// truncation height.

#include <optional>
#include <string>
#include <vector>

#include "hplateau/geometry.hpp"

namespace hplateau {

// A sampled arc in the ideal boundary.  Tangents are stored when the source
// is analytic; otherwise they are derived from the samples.
struct IdealArc {
  std::vector<Vec2> pts;
  bool closed = false;
  std::vector<Vec2> tangents;  // optional, unit; same size as pts when set

  static IdealArc circle(Vec2 center, double radius, int n);
  static IdealArc segment(Vec2 a, Vec2 b, int n);
  static IdealArc polyline(std::vector<Vec2> pts, bool closed = false);

  double length() const;
  Vec2 point_at_arclength(double s) const;
  Vec2 tangent_at_arclength(double s) const;
  // closest point: returns (arclength, distance)
  std::pair<double, double> closest_point(Vec2 q) const;
  IdealArc resampled_uniform(int n) const;
  bool is_regular() const;  // no vanishing segment
};

struct IdealCurveSet {
  std::vector<IdealArc> components;    // each closed
  std::vector<Vec2> singular_points;   // finite list

  double min_distance_to(Vec2 q) const;
  // parity signature: bit i = crossing parity against component i
  unsigned parity_signature(Vec2 q) const;
  // pairwise-disjoint and simple away from singular points, by segment tests
  bool components_simple_and_disjoint(double tol = 1e-9) const;

  std::string to_json() const;
  static IdealCurveSet from_json(const std::string& text);
};

// Closed region bounded by the curve set.  Each complementary component is
// described by a probe point and whether that component belongs to K.
struct RegionK {
  IdealCurveSet boundary;
  struct Component {
    Vec2 probe;
    bool in_region = false;
  };
  std::vector<Component> complementary;
  bool contains_infinity = false;

  static RegionK disk(Vec2 center, double radius, int n);
  static RegionK annulus(Vec2 center, double r_inner, double r_outer, int n);
  static RegionK from_boundary(IdealCurveSet boundary,
                               std::vector<Component> comps,
                               bool contains_infinity);

  bool contains(Vec2 q) const;
  // every boundary sample is a limit of in-region probes nearby ("closure of
  // its interior" on the discrete representation)
  bool closure_of_interior(double probe_radius) const;
};

// (A \ B) union (B \ A) as curves, re-stitched into closed components.
// Shared whole sub-arcs must coincide sample-wise within tol; transversal
// crossings pass through untouched.
IdealCurveSet symmetric_difference(const IdealCurveSet& a,
                                   const IdealCurveSet& b, double tol = 1e-9);

// Copies of each component at z = eps with arclength-uniform sampling;
// counts proportional to Euclidean length (target total samples).
std::vector<std::vector<HPoint>> lift_to_height(const IdealCurveSet& c,
                                                double eps, int total_samples);

// Junction angles of the arc against the curve set, in [0, pi/2].
// Throws if an endpoint is not on the curve within tol.
std::pair<double, double> orthogonality_check(const IdealArc& arc,
                                              const IdealCurveSet& curves,
                                              double tol = 1e-6);

}  // namespace hplateau
