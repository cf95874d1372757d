#include "hplateau/geometry.hpp"

namespace hplateau {

Vec2 Vec2::normalized() const {
  double n = norm();
  if (n == 0) throw std::domain_error("normalizing zero Vec2");
  return *this / n;
}

Vec3 Vec3::normalized() const {
  double n = norm();
  if (n == 0) throw std::domain_error("normalizing zero Vec3");
  return *this / n;
}

Isometry Isometry::dilation(Vec2 center, double lambda) {
  if (!(lambda > 0)) throw std::domain_error("dilation factor must be > 0");
  return {{Dilation{center, lambda}}};
}
Isometry Isometry::translation(Vec2 offset) { return {{Translation{offset}}}; }
Isometry Isometry::rotation(Vec2 center, double angle) {
  return {{Rotation{center, angle}}};
}
Isometry Isometry::inversion(Vec2 center, double radius) {
  if (!(radius > 0)) throw std::domain_error("inversion radius must be > 0");
  return {{HemisphereInversion{center, radius}}};
}

Isometry Isometry::then(const Isometry& g) const {
  Isometry out = *this;
  out.word.insert(out.word.end(), g.word.begin(), g.word.end());
  return out;
}

GeodesicPlane GeodesicPlane::vertical(Vec2 point, Vec2 direction) {
  GeodesicPlane pl;
  pl.kind = Kind::vertical_plane;
  pl.point = point;
  pl.direction = direction.normalized();
  return pl;
}

GeodesicPlane GeodesicPlane::hemisphere(Vec2 center, double radius) {
  if (!(radius > 0)) throw std::domain_error("hemisphere radius must be > 0");
  GeodesicPlane pl;
  pl.kind = Kind::hemisphere;
  pl.center = center;
  pl.radius = radius;
  return pl;
}

double hyp_distance(const HPoint& p, const HPoint& q) {
  if (!(p.z > 0) || !(q.z > 0))
    throw std::domain_error("hyp_distance requires z > 0");
  const double dx = p.x - q.x, dy = p.y - q.y, dz = p.z - q.z;
  const double d2 = dx * dx + dy * dy + dz * dz;
  // cosh d = 1 + d2/(2 zp zq)  =>  sinh(d/2) = |p-q| / (2 sqrt(zp zq))
  return 2.0 * std::asinh(0.5 * std::sqrt(d2 / (p.z * q.z)));
}

HPoint apply(const IsometryMove& m, const HPoint& p) {
  if (!(p.z > 0)) throw std::domain_error("isometry applied to z <= 0");
  struct Visitor {
    const HPoint& p;
    HPoint operator()(const Dilation& d) const {
      return {d.center.x + d.lambda * (p.x - d.center.x),
              d.center.y + d.lambda * (p.y - d.center.y), d.lambda * p.z};
    }
    HPoint operator()(const Translation& t) const {
      return {p.x + t.offset.x, p.y + t.offset.y, p.z};
    }
    HPoint operator()(const Rotation& r) const {
      const double c = std::cos(r.angle), s = std::sin(r.angle);
      const double ux = p.x - r.center.x, uy = p.y - r.center.y;
      return {r.center.x + c * ux - s * uy, r.center.y + s * ux + c * uy, p.z};
    }
    HPoint operator()(const HemisphereInversion& inv) const {
      const double ux = p.x - inv.center.x, uy = p.y - inv.center.y;
      const double n2 = ux * ux + uy * uy + p.z * p.z;
      if (n2 == 0) throw std::domain_error("inversion at its own center");
      const double s = inv.radius * inv.radius / n2;
      return {inv.center.x + s * ux, inv.center.y + s * uy, s * p.z};
    }
  };
  return std::visit(Visitor{p}, m);
}

HPoint apply(const Isometry& g, const HPoint& p) {
  HPoint q = p;
  for (const auto& m : g.word) q = apply(m, q);
  return q;
}

Vec2 apply_ideal(const Isometry& g, const Vec2& p) {
  // The primitive moves restrict to {z = 0}; reuse the 3D formulas.
  HPoint q{p.x, p.y, 0};
  for (const auto& m : g.word) {
    struct Visitor {
      const HPoint& p;
      HPoint operator()(const Dilation& d) const {
        return {d.center.x + d.lambda * (p.x - d.center.x),
                d.center.y + d.lambda * (p.y - d.center.y), 0};
      }
      HPoint operator()(const Translation& t) const {
        return {p.x + t.offset.x, p.y + t.offset.y, 0};
      }
      HPoint operator()(const Rotation& r) const {
        const double c = std::cos(r.angle), s = std::sin(r.angle);
        const double ux = p.x - r.center.x, uy = p.y - r.center.y;
        return {r.center.x + c * ux - s * uy, r.center.y + s * ux + c * uy, 0};
      }
      HPoint operator()(const HemisphereInversion& inv) const {
        const double ux = p.x - inv.center.x, uy = p.y - inv.center.y;
        const double n2 = ux * ux + uy * uy;
        if (n2 == 0) throw std::domain_error("ideal point at inversion center");
        const double s = inv.radius * inv.radius / n2;
        return {inv.center.x + s * ux, inv.center.y + s * uy, 0};
      }
    };
    q = std::visit(Visitor{q}, m);
  }
  return {q.x, q.y};
}

namespace {
// Inversion in the sphere centered at (0,0,-1) with radius sqrt(2); an
// involution exchanging the upper half-space and the unit ball.
Vec3 cayley_inversion(Vec3 p) {
  const Vec3 c{0, 0, -1};
  const Vec3 u = p - c;
  const double n2 = u.norm2();
  if (n2 == 0) throw std::domain_error("Cayley inversion at its pole");
  return c + u * (2.0 / n2);
}
}  // namespace

Vec3 half_space_to_ball(const HPoint& p) {
  if (!(p.z > 0)) throw std::domain_error("point not interior to half-space");
  Vec3 b = cayley_inversion(p.vec());
  b.z = -b.z;  // ball isometry moving the image of infinity to the north pole
  return b;
}

HPoint ball_to_half_space(const Vec3& b) {
  if (!(b.norm2() < 1.0)) throw std::domain_error("point not interior to ball");
  Vec3 r{b.x, b.y, -b.z};
  Vec3 h = cayley_inversion(r);
  return HPoint{h.x, h.y, h.z};
}

double ball_distance(const Vec3& a, const Vec3& b) {
  const double da = 1.0 - a.norm2(), db = 1.0 - b.norm2();
  if (!(da > 0) || !(db > 0))
    throw std::domain_error("ball_distance requires interior points");
  const double d2 = (a - b).norm2();
  return 2.0 * std::asinh(std::sqrt(d2 / (da * db)));
}

double side_of_plane(const GeodesicPlane& plane, const HPoint& p) {
  if (plane.kind == GeodesicPlane::Kind::hemisphere) {
    const double ux = p.x - plane.center.x, uy = p.y - plane.center.y;
    return ux * ux + uy * uy + p.z * p.z - plane.radius * plane.radius;
  }
  const Vec2 n{plane.direction.y, -plane.direction.x};
  return n.dot(Vec2{p.x, p.y} - plane.point);
}

double signed_plane_distance(const GeodesicPlane& plane, const HPoint& p) {
  if (!(p.z > 0)) throw std::domain_error("point not interior");
  if (plane.kind == GeodesicPlane::Kind::hemisphere) {
    const double ux = p.x - plane.center.x, uy = p.y - plane.center.y;
    const double q2 = ux * ux + uy * uy + p.z * p.z;
    return std::asinh((q2 - plane.radius * plane.radius) /
                      (2.0 * plane.radius * p.z));
  }
  const Vec2 n{plane.direction.y, -plane.direction.x};
  const double s = n.dot(Vec2{p.x, p.y} - plane.point);
  return std::asinh(s / p.z);
}

}  // namespace hplateau
