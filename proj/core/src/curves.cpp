#include "hplateau/curves.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

namespace hplateau {

IdealArc IdealArc::circle(Vec2 center, double radius, int n) {
  if (!(radius > 0) || n < 8) throw std::invalid_argument("bad circle");
  IdealArc arc;
  arc.closed = true;
  arc.pts.reserve(n);
  arc.tangents.reserve(n);
  for (int i = 0; i < n; ++i) {
    const double th = 2.0 * std::numbers::pi * i / n;
    arc.pts.push_back(center + Vec2{radius * std::cos(th), radius * std::sin(th)});
    arc.tangents.push_back({-std::sin(th), std::cos(th)});
  }
  return arc;
}

IdealArc IdealArc::segment(Vec2 a, Vec2 b, int n) {
  if (n < 2) throw std::invalid_argument("segment needs >= 2 samples");
  IdealArc arc;
  arc.closed = false;
  const Vec2 t = (b - a).normalized();
  for (int i = 0; i < n; ++i) {
    const double s = static_cast<double>(i) / (n - 1);
    arc.pts.push_back(a * (1.0 - s) + b * s);
    arc.tangents.push_back(t);
  }
  return arc;
}

IdealArc IdealArc::polyline(std::vector<Vec2> pts, bool closed) {
  IdealArc arc;
  arc.pts = std::move(pts);
  arc.closed = closed;
  return arc;
}

double IdealArc::length() const {
  double s = 0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) s += (pts[i + 1] - pts[i]).norm();
  if (closed && pts.size() > 1) s += (pts.front() - pts.back()).norm();
  return s;
}

Vec2 IdealArc::point_at_arclength(double s) const {
  const std::size_t n = pts.size();
  if (n == 0) throw std::domain_error("empty arc");
  if (n == 1) return pts[0];
  const double total = length();
  if (closed) s = std::fmod(std::fmod(s, total) + total, total);
  s = std::clamp(s, 0.0, total);
  double acc = 0;
  const std::size_t segs = closed ? n : n - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const Vec2 a = pts[i], b = pts[(i + 1) % n];
    const double ls = (b - a).norm();
    if (acc + ls >= s || i + 1 == segs) {
      const double t = ls > 0 ? (s - acc) / ls : 0.0;
      return a + (b - a) * std::clamp(t, 0.0, 1.0);
    }
    acc += ls;
  }
  return pts.back();
}

Vec2 IdealArc::tangent_at_arclength(double s) const {
  const std::size_t n = pts.size();
  const double total = length();
  if (closed) s = std::fmod(std::fmod(s, total) + total, total);
  s = std::clamp(s, 0.0, total);
  double acc = 0;
  const std::size_t segs = closed ? n : n - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const Vec2 a = pts[i], b = pts[(i + 1) % n];
    const double ls = (b - a).norm();
    if (acc + ls >= s || i + 1 == segs) {
      if (!tangents.empty()) {
        // blend the stored analytic tangents of the segment endpoints
        const double t = ls > 0 ? (s - acc) / ls : 0.0;
        const Vec2 mix = tangents[i] * (1.0 - t) + tangents[(i + 1) % n] * t;
        const double nn = mix.norm();
        if (nn > 1e-12) return mix / nn;
      }
      return ls > 0 ? (b - a) / ls : Vec2{1, 0};
    }
    acc += ls;
  }
  return {1, 0};
}

std::pair<double, double> IdealArc::closest_point(Vec2 q) const {
  const std::size_t n = pts.size();
  double best_d = 1e300, best_s = 0, acc = 0;
  const std::size_t segs = closed ? n : n - 1;
  for (std::size_t i = 0; i < segs; ++i) {
    const Vec2 a = pts[i], b = pts[(i + 1) % n];
    const Vec2 ab = b - a;
    const double ls = ab.norm();
    double t = 0;
    if (ls > 0) t = std::clamp((q - a).dot(ab) / (ls * ls), 0.0, 1.0);
    const Vec2 p = a + ab * t;
    const double d = (q - p).norm();
    if (d < best_d) {
      best_d = d;
      best_s = acc + t * ls;
    }
    acc += ls;
  }
  return {best_s, best_d};
}

IdealArc IdealArc::resampled_uniform(int n) const {
  IdealArc out;
  out.closed = closed;
  const double total = length();
  const int count = std::max(n, 2);
  for (int i = 0; i < count; ++i) {
    const double s = closed ? total * i / count
                            : total * i / (count - 1);
    out.pts.push_back(point_at_arclength(s));
  }
  return out;
}

bool IdealArc::is_regular() const {
  const std::size_t n = pts.size();
  if (n < 2) return false;
  const std::size_t segs = closed ? n : n - 1;
  for (std::size_t i = 0; i < segs; ++i)
    if ((pts[(i + 1) % n] - pts[i]).norm() <= 0) return false;
  return true;
}

double IdealCurveSet::min_distance_to(Vec2 q) const {
  double d = 1e300;
  for (const auto& c : components) d = std::min(d, c.closest_point(q).second);
  return d;
}

unsigned IdealCurveSet::parity_signature(Vec2 q) const {
  // crossing parity of a ray in +x direction against each closed component
  unsigned sig = 0;
  for (std::size_t k = 0; k < components.size(); ++k) {
    if (point_in_polygon(q, components[k].pts)) sig |= (1u << k);
  }
  return sig;
}

namespace {

bool segments_intersect(Vec2 a, Vec2 b, Vec2 c, Vec2 d, double tol) {
  const double d1 = (b - a).cross(c - a);
  const double d2 = (b - a).cross(d - a);
  const double d3 = (d - c).cross(a - c);
  const double d4 = (d - c).cross(b - c);
  return ((d1 > tol && d2 < -tol) || (d1 < -tol && d2 > tol)) &&
         ((d3 > tol && d4 < -tol) || (d3 < -tol && d4 > tol));
}

}  // namespace

bool IdealCurveSet::components_simple_and_disjoint(double tol) const {
  for (std::size_t k = 0; k < components.size(); ++k) {
    const auto& pk = components[k].pts;
    const std::size_t nk = pk.size();
    for (std::size_t i = 0; i < nk; ++i) {
      const Vec2 a = pk[i], b = pk[(i + 1) % nk];
      // self-intersections (skip adjacent segments)
      for (std::size_t j = i + 2; j < nk; ++j) {
        if (i == 0 && j == nk - 1) continue;
        if (segments_intersect(a, b, pk[j], pk[(j + 1) % nk], tol)) {
          bool near_singular = false;
          for (const auto& s : singular_points)
            if ((s - a).norm() < 10 * tol || (s - pk[j]).norm() < 10 * tol)
              near_singular = true;
          if (!near_singular) return false;
        }
      }
      // against other components
      for (std::size_t m = k + 1; m < components.size(); ++m) {
        const auto& pm = components[m].pts;
        for (std::size_t j = 0; j < pm.size(); ++j)
          if (segments_intersect(a, b, pm[j], pm[(j + 1) % pm.size()], tol))
            return false;
      }
    }
  }
  return true;
}

std::string IdealCurveSet::to_json() const {
  nlohmann::ordered_json j;
  j["components"] = nlohmann::ordered_json::array();
  for (const auto& c : components) {
    nlohmann::ordered_json comp = nlohmann::ordered_json::array();
    for (const auto& p : c.pts) comp.push_back({p.x, p.y});
    j["components"].push_back(comp);
  }
  j["singular_points"] = nlohmann::ordered_json::array();
  for (const auto& p : singular_points) j["singular_points"].push_back({p.x, p.y});
  return j.dump(2);
}

IdealCurveSet IdealCurveSet::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  IdealCurveSet out;
  for (const auto& comp : j.at("components")) {
    IdealArc arc;
    arc.closed = true;
    for (const auto& p : comp) arc.pts.push_back({p.at(0), p.at(1)});
    out.components.push_back(std::move(arc));
  }
  for (const auto& p : j.at("singular_points"))
    out.singular_points.push_back({p.at(0), p.at(1)});
  return out;
}

RegionK RegionK::disk(Vec2 center, double radius, int n) {
  RegionK k;
  k.boundary.components.push_back(IdealArc::circle(center, radius, n));
  k.complementary.push_back({center, true});
  k.complementary.push_back({center + Vec2{2 * radius, 0}, false});
  k.contains_infinity = false;
  return k;
}

RegionK RegionK::annulus(Vec2 center, double r_inner, double r_outer, int n) {
  if (!(0 < r_inner && r_inner < r_outer))
    throw std::invalid_argument("annulus radii");
  RegionK k;
  k.boundary.components.push_back(IdealArc::circle(center, r_inner, n));
  k.boundary.components.push_back(IdealArc::circle(center, r_outer, n));
  k.complementary.push_back({center, false});
  k.complementary.push_back({center + Vec2{0.5 * (r_inner + r_outer), 0}, true});
  k.complementary.push_back({center + Vec2{2 * r_outer, 0}, false});
  k.contains_infinity = false;
  return k;
}

RegionK RegionK::from_boundary(IdealCurveSet boundary,
                               std::vector<Component> comps,
                               bool contains_inf) {
  RegionK k;
  k.boundary = std::move(boundary);
  k.complementary = std::move(comps);
  k.contains_infinity = contains_inf;
  return k;
}

bool RegionK::contains(Vec2 q) const {
  const unsigned sig = boundary.parity_signature(q);
  for (const auto& c : complementary)
    if (boundary.parity_signature(c.probe) == sig) return c.in_region;
  // unmatched signature: fall back to the component of infinity
  return contains_infinity;
}

bool RegionK::closure_of_interior(double probe_radius) const {
  for (const auto& comp : boundary.components) {
    for (std::size_t i = 0; i < comp.pts.size(); i += 7) {
      bool has_interior_neighbor = false;
      for (int k = 0; k < 12 && !has_interior_neighbor; ++k) {
        const double th = 2.0 * std::numbers::pi * k / 12;
        const Vec2 q = comp.pts[i] + Vec2{std::cos(th), std::sin(th)} * probe_radius;
        if (contains(q)) has_interior_neighbor = true;
      }
      if (!has_interior_neighbor) return false;
    }
  }
  return true;
}

namespace {

struct OpenArc {
  std::vector<Vec2> pts;
};

// maximal runs of samples of `a` farther than tol from `b`
void collect_kept_arcs(const IdealCurveSet& a, const IdealCurveSet& b,
                       double tol, std::vector<OpenArc>& out,
                       bool& everything_kept) {
  everything_kept = true;
  for (const auto& comp : a.components) {
    const std::size_t n = comp.pts.size();
    std::vector<bool> shared(n);
    std::size_t shared_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      shared[i] = b.min_distance_to(comp.pts[i]) < tol;
      if (shared[i]) ++shared_count;
    }
    // isolated coincidences (transversal crossings) are not shared arcs
    for (std::size_t i = 0; i < n; ++i) {
      if (!shared[i]) continue;
      const bool prev = shared[(i + n - 1) % n], next = shared[(i + 1) % n];
      if (!prev && !next) {
        shared[i] = false;
        --shared_count;
      }
    }
    if (shared_count == 0) {
      OpenArc whole;
      whole.pts = comp.pts;
      whole.pts.push_back(comp.pts.front());  // keep closed, marked by repeat
      out.push_back(std::move(whole));
      continue;
    }
    everything_kept = false;
    if (shared_count == n) continue;  // component entirely shared: removed
    // walk runs of kept samples (include the shared samples adjacent to the
    // run so arcs terminate exactly on the shared sub-arc endpoints)
    std::size_t start = 0;
    while (!shared[start]) start = (start + 1) % n;  // a shared sample
    std::size_t i = start;
    do {
      if (shared[i] && !shared[(i + 1) % n]) {
        OpenArc arc;
        arc.pts.push_back(comp.pts[i]);
        std::size_t j = (i + 1) % n;
        while (!shared[j]) {
          arc.pts.push_back(comp.pts[j]);
          j = (j + 1) % n;
        }
        arc.pts.push_back(comp.pts[j]);
        out.push_back(std::move(arc));
      }
      i = (i + 1) % n;
    } while (i != start);
  }
}

}  // namespace

IdealCurveSet symmetric_difference(const IdealCurveSet& a,
                                   const IdealCurveSet& b, double tol) {
  std::vector<OpenArc> arcs;
  bool a_kept = false, b_kept = false;
  collect_kept_arcs(a, b, tol, arcs, a_kept);
  collect_kept_arcs(b, a, tol, arcs, b_kept);

  IdealCurveSet out;
  // closed leftovers (marked by first == last sample) become components
  std::vector<OpenArc> open;
  for (auto& arc : arcs) {
    if (arc.pts.size() > 2 &&
        (arc.pts.front() - arc.pts.back()).norm() < tol &&
        arc.pts.size() > 3) {
      IdealArc comp;
      comp.closed = true;
      comp.pts.assign(arc.pts.begin(), arc.pts.end() - 1);
      out.components.push_back(std::move(comp));
    } else {
      open.push_back(std::move(arc));
    }
  }

  // stitch open arcs at matching endpoints
  const double stitch = std::max(tol, 1e-9);
  std::vector<bool> used(open.size(), false);
  for (std::size_t seed = 0; seed < open.size(); ++seed) {
    if (used[seed]) continue;
    used[seed] = true;
    std::vector<Vec2> loop = open[seed].pts;
    int guard = 0;
    while ((loop.front() - loop.back()).norm() > stitch) {
      if (++guard > static_cast<int>(open.size()) + 2)
        throw std::runtime_error(
            "symmetric_difference: cannot stitch arcs (tangential partial "
            "overlap beyond tolerance?)");
      bool extended = false;
      for (std::size_t j = 0; j < open.size() && !extended; ++j) {
        if (used[j]) continue;
        const auto& cand = open[j].pts;
        if ((cand.front() - loop.back()).norm() <= stitch) {
          loop.insert(loop.end(), cand.begin() + 1, cand.end());
          used[j] = true;
          extended = true;
        } else if ((cand.back() - loop.back()).norm() <= stitch) {
          loop.insert(loop.end(), cand.rbegin() + 1, cand.rend());
          used[j] = true;
          extended = true;
        }
      }
      if (!extended)
        throw std::runtime_error(
            "symmetric_difference: open arc endpoint without a partner");
    }
    loop.pop_back();  // drop closing duplicate
    if (loop.size() >= 3) {
      IdealArc comp;
      comp.closed = true;
      comp.pts = std::move(loop);
      out.components.push_back(std::move(comp));
    }
  }

  // junction points where stitching happened are the singular candidates
  for (const auto& s : a.singular_points) out.singular_points.push_back(s);
  for (const auto& s : b.singular_points) out.singular_points.push_back(s);
  return out;
}

std::vector<std::vector<HPoint>> lift_to_height(const IdealCurveSet& c,
                                                double eps, int total_samples) {
  if (!(eps > 0)) throw std::domain_error("lift height must be positive");
  std::vector<std::vector<HPoint>> out;
  double total_len = 0;
  for (const auto& comp : c.components) total_len += comp.length();
  if (total_len <= 0 || c.components.empty()) return out;
  for (const auto& comp : c.components) {
    const int n = std::max(
        8, static_cast<int>(std::lround(total_samples * comp.length() / total_len)));
    const auto rs = comp.resampled_uniform(n);
    std::vector<HPoint> ring;
    ring.reserve(rs.pts.size());
    for (const auto& p : rs.pts) ring.push_back({p.x, p.y, eps});
    out.push_back(std::move(ring));
  }
  return out;
}

std::pair<double, double> orthogonality_check(const IdealArc& arc,
                                              const IdealCurveSet& curves,
                                              double tol) {
  if (arc.pts.size() < 2) throw std::invalid_argument("degenerate arc");
  auto angle_at = [&](Vec2 endpoint, Vec2 arc_tangent) {
    double best_d = 1e300, best_s = 0;
    const IdealArc* best_comp = nullptr;
    for (const auto& comp : curves.components) {
      const auto [s, d] = comp.closest_point(endpoint);
      if (d < best_d) {
        best_d = d;
        best_s = s;
        best_comp = &comp;
      }
    }
    if (!best_comp || best_d > tol)
      throw std::runtime_error("arc endpoint not on the curve set");
    const Vec2 ct = best_comp->tangent_at_arclength(best_s);
    const double c = std::abs(arc_tangent.normalized().dot(ct));
    return std::acos(std::clamp(c, 0.0, 1.0));
  };
  const Vec2 t0 = arc.pts[1] - arc.pts[0];
  const Vec2 t1 = arc.pts[arc.pts.size() - 1] - arc.pts[arc.pts.size() - 2];
  return {angle_at(arc.pts.front(), t0), angle_at(arc.pts.back(), t1)};
}

}  // namespace hplateau
