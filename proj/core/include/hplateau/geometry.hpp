#pragma once

// Core hyperbolic geometry in the upper half-space model of H^3 and the
// Poincare ball model: points, distances, the primitive isometries used by
// the constructions, geodesic planes, and model conversion.

#include <array>
#include <cmath>
#include <stdexcept>
#include <variant>
#include <vector>

namespace hplateau {

struct Vec2 {
  double x = 0, y = 0;

  Vec2 operator+(Vec2 b) const { return {x + b.x, y + b.y}; }
  Vec2 operator-(Vec2 b) const { return {x - b.x, y - b.y}; }
  Vec2 operator*(double a) const { return {x * a, y * a}; }
  Vec2 operator/(double a) const { return {x / a, y / a}; }
  double dot(Vec2 b) const { return x * b.x + y * b.y; }
  double cross(Vec2 b) const { return x * b.y - y * b.x; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  Vec2 normalized() const;
  Vec2 perp() const { return {-y, x}; }  // rotate +90 degrees
};

struct Vec3 {
  double x = 0, y = 0, z = 0;

  Vec3 operator+(Vec3 b) const { return {x + b.x, y + b.y, z + b.z}; }
  Vec3 operator-(Vec3 b) const { return {x - b.x, y - b.y, z - b.z}; }
  Vec3 operator*(double a) const { return {x * a, y * a, z * a}; }
  Vec3 operator/(double a) const { return {x / a, y / a, z / a}; }
  double dot(Vec3 b) const { return x * b.x + y * b.y + z * b.z; }
  Vec3 cross(Vec3 b) const {
    return {y * b.z - z * b.y, z * b.x - x * b.z, x * b.y - y * b.x};
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }
  Vec3 normalized() const;
  Vec2 xy() const { return {x, y}; }
};

// Interior point of the half-space model, z > 0 in Euclidean units.
struct HPoint {
  double x = 0, y = 0, z = 1;

  Vec3 vec() const { return {x, y, z}; }
  static HPoint from(Vec3 v) { return {v.x, v.y, v.z}; }
};

// Point of the ideal boundary {z = 0} together with the point at infinity.
struct IdealPoint {
  Vec2 p{};
  bool at_infinity = false;

  static IdealPoint infinity() { return {{0, 0}, true}; }
  static IdealPoint at(double x, double y) { return {{x, y}, false}; }
};

// Primitive moves.  Each maps {z > 0} to itself and preserves hyperbolic
// distance; an Isometry is a composition word of these, kept symbolic so
// individual moves stay exact and auditable.
struct Dilation {           // p -> c + lambda (p - c), c ideal
  Vec2 center{};
  double lambda = 1;
};
struct Translation {        // horizontal shift
  Vec2 offset{};
};
struct Rotation {           // about the vertical axis through `center`
  Vec2 center{};
  double angle = 0;
};
struct HemisphereInversion {  // inversion in the hemisphere |p - c| = radius
  Vec2 center{};
  double radius = 1;
};

using IsometryMove =
    std::variant<Dilation, Translation, Rotation, HemisphereInversion>;

struct Isometry {
  std::vector<IsometryMove> word;

  static Isometry identity() { return {}; }
  static Isometry dilation(Vec2 center, double lambda);
  static Isometry translation(Vec2 offset);
  static Isometry rotation(Vec2 center, double angle);
  static Isometry inversion(Vec2 center, double radius);

  Isometry then(const Isometry& g) const;  // apply *this first, then g
};

// Totally geodesic plane: a vertical Euclidean half-plane over an ideal
// line, or a Euclidean hemisphere centered on {z = 0}.
struct GeodesicPlane {
  enum class Kind { vertical_plane, hemisphere };
  Kind kind = Kind::hemisphere;
  // vertical_plane: line through `point` with direction `direction`
  Vec2 point{};
  Vec2 direction{0, 1};
  // hemisphere: center on z = 0 and Euclidean radius
  Vec2 center{};
  double radius = 1;

  static GeodesicPlane vertical(Vec2 point, Vec2 direction);
  static GeodesicPlane hemisphere(Vec2 center, double radius);
};

// Hyperbolic distance, from cosh d = 1 + |p-q|^2 / (2 z_p z_q) evaluated in
// the asinh form which is stable for nearby points.
double hyp_distance(const HPoint& p, const HPoint& q);

HPoint apply(const IsometryMove& m, const HPoint& p);
HPoint apply(const Isometry& g, const HPoint& p);
Vec2 apply_ideal(const Isometry& g, const Vec2& p);

// Cayley transform pinned by (0,0,1) <-> ball center and infinity <-> ball
// north pole (0,0,1).
Vec3 half_space_to_ball(const HPoint& p);
HPoint ball_to_half_space(const Vec3& b);

// Distance computed natively in the ball model, for cross-model checks.
double ball_distance(const Vec3& a, const Vec3& b);

// Sign classifies the component of H^3 minus the plane containing p;
// 0 on the plane.  Hemisphere: |p - c|^2 - a^2.  Vertical plane: signed
// Euclidean offset from the line, positive on the side of direction.perp()
// negated (so that the plane x = 0 with direction +y gives the x offset).
double side_of_plane(const GeodesicPlane& plane, const HPoint& p);

// Signed hyperbolic distance from p to the plane, same sign convention as
// side_of_plane.
double signed_plane_distance(const GeodesicPlane& plane, const HPoint& p);

}  // namespace hplateau
