#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include "hplateau/mesh.hpp"

namespace hplateau {

PlanarMesh disk_mesh(Vec2 center, double radius, int rings) {
  if (rings < 1) throw std::invalid_argument("disk_mesh: rings >= 1");
  PlanarMesh pm;
  pm.pts.push_back(center);
  std::vector<int> ring_start{0};
  for (int k = 1; k <= rings; ++k) {
    ring_start.push_back(static_cast<int>(pm.pts.size()));
    const int mk = 6 * k;
    const double rk = radius * k / rings;
    for (int j = 0; j < mk; ++j) {
      const double th = 2.0 * std::numbers::pi * j / mk;
      pm.pts.push_back(center + Vec2{rk * std::cos(th), rk * std::sin(th)});
    }
  }
  // innermost fan
  for (int j = 0; j < 6; ++j)
    pm.tris.push_back({0, 1 + j, 1 + (j + 1) % 6});
  // ring bands: walk both rings by angle, zig-zag
  for (int k = 1; k < rings; ++k) {
    const int a0 = ring_start[k], na = 6 * k;
    const int b0 = ring_start[k + 1], nb = 6 * (k + 1);
    int i = 0, j = 0;  // indices within inner (a) and outer (b) rings
    // advance around both rings by smaller leading angle
    while (i < na || j < nb) {
      const double ang_a = (i + 1.0) / na, ang_b = (j + 1.0) / nb;
      if (j < nb && (i == na || ang_b < ang_a)) {
        pm.tris.push_back({b0 + j % nb, b0 + (j + 1) % nb, a0 + i % na});
        ++j;
      } else {
        pm.tris.push_back({a0 + i % na, b0 + j % nb, a0 + (i + 1) % na});
        ++i;
      }
    }
  }
  pm.on_boundary.assign(pm.pts.size(), false);
  for (int j = ring_start[rings]; j < static_cast<int>(pm.pts.size()); ++j)
    pm.on_boundary[j] = true;
  return pm;
}

PlanarMesh annulus_mesh(Vec2 center, double r_inner, double r_outer, int n_r,
                        int n_theta) {
  if (!(r_outer > r_inner && r_inner > 0))
    throw std::invalid_argument("annulus_mesh: need 0 < r_inner < r_outer");
  PlanarMesh pm;
  for (int i = 0; i <= n_r; ++i) {
    const double r = r_inner + (r_outer - r_inner) * i / n_r;
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n_theta;
      pm.pts.push_back(center + Vec2{r * std::cos(th), r * std::sin(th)});
    }
  }
  auto id = [&](int i, int j) { return i * n_theta + ((j % n_theta) + n_theta) % n_theta; };
  for (int i = 0; i < n_r; ++i)
    for (int j = 0; j < n_theta; ++j) {
      pm.tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      pm.tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  pm.on_boundary.assign(pm.pts.size(), false);
  for (int j = 0; j < n_theta; ++j) {
    pm.on_boundary[id(0, j)] = true;
    pm.on_boundary[id(n_r, j)] = true;
  }
  return pm;
}

PlanarMesh rect_mesh(Vec2 lo, Vec2 hi, int nx, int ny) {
  PlanarMesh pm;
  auto id = [&](int i, int j) { return i * (ny + 1) + j; };
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j)
      pm.pts.push_back({lo.x + (hi.x - lo.x) * i / nx,
                        lo.y + (hi.y - lo.y) * j / ny});
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      // alternate the diagonal for isotropy
      if ((i + j) % 2 == 0) {
        pm.tris.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
        pm.tris.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
      } else {
        pm.tris.push_back({id(i, j), id(i + 1, j), id(i, j + 1)});
        pm.tris.push_back({id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
      }
    }
  pm.on_boundary.assign(pm.pts.size(), false);
  for (int i = 0; i <= nx; ++i)
    for (int j = 0; j <= ny; ++j)
      if (i == 0 || i == nx || j == 0 || j == ny) pm.on_boundary[id(i, j)] = true;
  return pm;
}

bool point_in_polygon(Vec2 q, const std::vector<Vec2>& poly) {
  bool in = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2 a = poly[j], b = poly[i];
    if ((b.y > q.y) != (a.y > q.y)) {
      const double xs = b.x + (q.y - b.y) * (a.x - b.x) / (a.y - b.y);
      if (q.x < xs) in = !in;
    }
  }
  return in;
}

namespace {

double signed_area2(const std::vector<Vec2>& poly) {
  double s = 0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i)
    s += poly[i].cross(poly[(i + 1) % n]);
  return s;
}

// strict interior test, so vertices lying exactly on an ear edge (the
// duplicated hole-bridge endpoints) do not block the ear
bool tri_contains(Vec2 a, Vec2 b, Vec2 c, Vec2 q, double tol) {
  const double d1 = (b - a).cross(q - a);
  const double d2 = (c - b).cross(q - b);
  const double d3 = (a - c).cross(q - c);
  return d1 > tol && d2 > tol && d3 > tol;
}

// Ear clipping of a simple CCW polygon given as indices into pts.
void ear_clip(const std::vector<Vec2>& pts, std::vector<int> ring,
              std::vector<std::array<int, 3>>& out) {
  // scale-aware tolerance (positive: strict-interior / strict-convex margin)
  double scale = 0;
  for (int i : ring) scale = std::max(scale, std::abs(pts[i].x) + std::abs(pts[i].y));
  const double tol = 1e-12 * std::max(scale, 1.0) * std::max(scale, 1.0);

  // a vertex exactly on the candidate diagonal would become a T-junction
  auto on_segment = [&](Vec2 a, Vec2 c, Vec2 q) {
    const Vec2 ac = c - a, aq = q - a;
    const double cr = std::abs(ac.cross(aq));
    if (cr > 1e-9 * std::max(scale, 1.0)) return false;
    const double t = aq.dot(ac) / std::max(ac.norm2(), 1e-300);
    return t > 1e-12 && t < 1.0 - 1e-12;
  };

  while (ring.size() > 3) {
    const std::size_t n = ring.size();
    bool clipped = false;
    // prefer the ear with best shape to avoid sliver cascades
    double best_quality = -1;
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = pts[ring[(i + n - 1) % n]];
      const Vec2 b = pts[ring[i]];
      const Vec2 c = pts[ring[(i + 1) % n]];
      const double cr = (b - a).cross(c - b);
      if (cr <= tol) continue;  // reflex or collinear
      bool ok = true;
      for (std::size_t j = 0; j < n && ok; ++j) {
        if (j == i || j == (i + n - 1) % n || j == (i + 1) % n) continue;
        const Vec2 q = pts[ring[j]];
        if (tri_contains(a, b, c, q, tol) || on_segment(a, c, q)) ok = false;
      }
      if (!ok) continue;
      const double lab = (b - a).norm(), lbc = (c - b).norm(), lca = (a - c).norm();
      const double q = cr / (lab * lab + lbc * lbc + lca * lca + 1e-300);
      if (q > best_quality) {
        best_quality = q;
        best_i = i;
        clipped = true;
      }
    }
    if (!clipped) {
      // a zero-area leftover (collinear chain) means the region is done
      double area2 = 0;
      for (std::size_t i = 0; i < n; ++i)
        area2 += pts[ring[i]].cross(pts[ring[(i + 1) % n]]);
      if (std::abs(area2) <= 2.0 * tol * static_cast<double>(n)) return;
      throw std::runtime_error("ear clipping stuck");
    }
    const std::size_t n2 = ring.size();
    out.push_back({ring[(best_i + n2 - 1) % n2], ring[best_i],
                   ring[(best_i + 1) % n2]});
    ring.erase(ring.begin() + static_cast<long>(best_i));
  }
  const Vec2 a = pts[ring[0]], b = pts[ring[1]], c = pts[ring[2]];
  if ((b - a).cross(c - b) > tol) out.push_back({ring[0], ring[1], ring[2]});
}

}  // namespace

PlanarMesh polygon_mesh(const std::vector<std::vector<Vec2>>& loops,
                        int refine_levels, int smooth_iters) {
  if (loops.empty()) throw std::invalid_argument("polygon_mesh: no loops");
  std::vector<Vec2> outer = loops[0];
  if (signed_area2(outer) < 0) std::reverse(outer.begin(), outer.end());

  PlanarMesh pm;
  std::vector<int> ring;

  if (loops.size() == 1) {
    pm.pts = outer;
    ring.resize(outer.size());
    for (std::size_t i = 0; i < outer.size(); ++i) ring[i] = static_cast<int>(i);
  } else {
    // Bridge each hole into the outer ring at mutually visible vertices:
    // connect the hole's rightmost vertex to the nearest outer vertex to its
    // right (simple and adequate for the well-separated holes we build).
    std::vector<std::vector<Vec2>> holes(loops.begin() + 1, loops.end());
    for (auto& h : holes)
      if (signed_area2(h) > 0) std::reverse(h.begin(), h.end());  // holes CW
    std::sort(holes.begin(), holes.end(), [](const auto& a, const auto& b) {
      auto mx = [](const std::vector<Vec2>& v) {
        double m = -1e300;
        for (auto& p : v) m = std::max(m, p.x);
        return m;
      };
      return mx(a) > mx(b);
    });
    std::vector<Vec2> merged = outer;
    for (const auto& hole : holes) {
      std::size_t hi = 0;
      for (std::size_t i = 1; i < hole.size(); ++i)
        if (hole[i].x > hole[hi].x) hi = i;
      const Vec2 hp = hole[hi];
      // nearest merged-ring vertex strictly to the right
      std::size_t mi = merged.size();
      double best = 1e300;
      for (std::size_t i = 0; i < merged.size(); ++i) {
        if (merged[i].x <= hp.x) continue;
        const double d = (merged[i] - hp).norm2();
        if (d < best) {
          best = d;
          mi = i;
        }
      }
      if (mi == merged.size())
        throw std::runtime_error("polygon_mesh: cannot bridge hole");
      // splice: outer[0..mi], hole[hi..], hole[..hi], outer[mi..]
      std::vector<Vec2> next;
      next.insert(next.end(), merged.begin(), merged.begin() + static_cast<long>(mi) + 1);
      for (std::size_t k = 0; k <= hole.size(); ++k)
        next.push_back(hole[(hi + k) % hole.size()]);
      next.insert(next.end(), merged.begin() + static_cast<long>(mi), merged.end());
      merged = std::move(next);
    }
    pm.pts = merged;
    ring.resize(merged.size());
    for (std::size_t i = 0; i < merged.size(); ++i) ring[i] = static_cast<int>(i);
  }

  ear_clip(pm.pts, ring, pm.tris);

  // weld the duplicated bridge vertices so hole boundaries stay separate
  // combinatorial boundary cycles
  {
    double scale = 0;
    for (const auto& p : pm.pts) scale = std::max(scale, std::abs(p.x) + std::abs(p.y));
    const double weld_tol = 1e-12 * std::max(scale, 1.0);
    std::vector<int> remap(pm.pts.size());
    std::vector<Vec2> unique_pts;
    for (std::size_t i = 0; i < pm.pts.size(); ++i) {
      int found = -1;
      for (std::size_t j = 0; j < unique_pts.size(); ++j)
        if ((unique_pts[j] - pm.pts[i]).norm() <= weld_tol) {
          found = static_cast<int>(j);
          break;
        }
      if (found < 0) {
        found = static_cast<int>(unique_pts.size());
        unique_pts.push_back(pm.pts[i]);
      }
      remap[i] = found;
    }
    for (auto& t : pm.tris)
      for (int& v : t) v = remap[v];
    pm.pts = std::move(unique_pts);
  }

  // boundary = all original loop samples
  pm.on_boundary.assign(pm.pts.size(), true);

  for (int l = 0; l < refine_levels; ++l) refine_planar(pm);
  smooth_planar(pm, smooth_iters);
  return pm;
}

void refine_planar(PlanarMesh& pm) {
  std::map<std::pair<int, int>, int> midpoint;
  auto mid = [&](int a, int b) {
    const auto key = std::make_pair(std::min(a, b), std::max(a, b));
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    const int id = static_cast<int>(pm.pts.size());
    pm.pts.push_back((pm.pts[a] + pm.pts[b]) * 0.5);
    pm.on_boundary.push_back(pm.on_boundary[a] && pm.on_boundary[b]);
    midpoint[key] = id;
    return id;
  };
  // midpoint of a boundary edge is on the boundary only if the edge is a
  // boundary edge; detect via edge face counts
  std::map<std::pair<int, int>, int> count;
  for (const auto& t : pm.tris)
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      count[{std::min(a, b), std::max(a, b)}]++;
    }
  std::vector<std::array<int, 3>> next;
  next.reserve(pm.tris.size() * 4);
  for (const auto& t : pm.tris) {
    const int ab = mid(t[0], t[1]), bc = mid(t[1], t[2]), ca = mid(t[2], t[0]);
    // fix the boundary flag using edge counts
    auto fix = [&](int a, int b, int m) {
      if (count[{std::min(a, b), std::max(a, b)}] == 2) pm.on_boundary[m] = false;
    };
    fix(t[0], t[1], ab);
    fix(t[1], t[2], bc);
    fix(t[2], t[0], ca);
    next.push_back({t[0], ab, ca});
    next.push_back({ab, t[1], bc});
    next.push_back({ca, bc, t[2]});
    next.push_back({ab, bc, ca});
  }
  pm.tris = std::move(next);
}

void smooth_planar(PlanarMesh& pm, int iters) {
  std::vector<std::vector<int>> nbr(pm.pts.size());
  std::vector<std::vector<int>> vtris(pm.pts.size());
  for (std::size_t t = 0; t < pm.tris.size(); ++t)
    for (int e = 0; e < 3; ++e) {
      const int a = pm.tris[t][e];
      nbr[a].push_back(pm.tris[t][(e + 1) % 3]);
      nbr[a].push_back(pm.tris[t][(e + 2) % 3]);
      vtris[a].push_back(static_cast<int>(t));
    }
  auto signed2 = [&](const std::array<int, 3>& t) {
    return (pm.pts[t[1]] - pm.pts[t[0]]).cross(pm.pts[t[2]] - pm.pts[t[0]]);
  };
  for (int it = 0; it < iters; ++it) {
    for (std::size_t v = 0; v < pm.pts.size(); ++v) {
      if (pm.on_boundary[v] || nbr[v].empty()) continue;
      Vec2 c{0, 0};
      for (int u : nbr[v]) c = c + pm.pts[u];
      c = c / static_cast<double>(nbr[v].size());
      // accept only flip-free moves; halve toward the target otherwise
      const Vec2 old = pm.pts[v];
      Vec2 target = c;
      for (int tries = 0; tries < 4; ++tries) {
        pm.pts[v] = target;
        bool ok = true;
        for (int t : vtris[v])
          if (signed2(pm.tris[t]) <= 0) {
            ok = false;
            break;
          }
        if (ok) break;
        pm.pts[v] = old;
        target = (old + target) * 0.5;
      }
    }
  }
}

TriMesh lift_planar(const PlanarMesh& pm, double height, double eps) {
  TriMesh m;
  m.truncation_eps = eps;
  m.pos.reserve(pm.pts.size());
  for (const auto& p : pm.pts) m.pos.push_back({p.x, p.y, height});
  m.tris = pm.tris;
  m.vclass.resize(pm.pts.size());
  for (std::size_t v = 0; v < pm.pts.size(); ++v)
    m.vclass[v] = pm.on_boundary[v] ? VertexClass::fixed_vertex
                                    : VertexClass::free_vertex;
  return m;
}

}  // namespace hplateau
