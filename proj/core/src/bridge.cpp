#include "hplateau/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hplateau {

namespace {

double phi(double x, double R) {
  const double c = 2.0 * (R - 1.0);
  return 1.0 / (x - 1.0) - c / (R - x);
}

}  // namespace

double SkilletProfile::eval(double x) const {
  const double R = support_radius;
  const double ax = std::abs(x);
  if (ax >= R * (1.0 - 1e-13)) return 0.0;
  if (ax <= 1.0) return 1e18;
  const double mid = 0.5 * (1.0 + R);
  const double lg = std::log(height) + phi(ax, R) - phi(mid, R);
  return std::exp(std::min(lg, 60.0));  // cap the blow-up at ~1e26
}

double SkilletProfile::inverse(double y) const {
  const double R = support_radius;
  if (y <= 0) return R;
  const double mid = 0.5 * (1.0 + R);
  const double target = std::log(y / height) + phi(mid, R);
  // phi decreases in x on (1, R); bisect
  double lo = 1.0 + 1e-14, hi = R - 1e-14;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (lo + hi);
    (phi(m, R) > target ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

bool SkilletProfile::convex_on_finite_part(int samples) const {
  const double R = support_radius;
  const double h = (R - 1.0 - 2e-6) / samples;
  for (int i = 1; i + 1 < samples; ++i) {
    const double x = 1.0 + 1e-6 + i * h;
    const double d2 = eval(x + h) - 2.0 * eval(x) + eval(x - h);
    if (d2 < -1e-9 * std::max(1.0, eval(x))) return false;
  }
  return true;
}

std::vector<Vec2> SkilletProfile::boundary_polyline(double x_max, double y_max,
                                                    int n) const {
  // graph y = u(x), the zero tails, and the vertical asymptote walls,
  // traced from (-x_max, 0) to (x_max, 0) over the blow-up interval
  std::vector<Vec2> out;
  const double R = support_radius;
  auto add = [&](Vec2 p) {
    if (out.empty() || (out.back() - p).norm() > 1e-12) out.push_back(p);
  };
  // left tail
  add({-x_max, 0.0});
  add({-R, 0.0});
  // left graph from -R up to the wall
  const int m = std::max(n / 4, 16);
  for (int i = 1; i <= m; ++i) {
    // march in y logarithmically to resolve the blow-up
    const double y = y_max * std::pow(1e-4, 1.0 - static_cast<double>(i) / m);
    const double x = inverse(y);
    if (y > y_max) break;
    add({-x, y});
  }
  add({-inverse(y_max), y_max});
  // across the top is open (the wall goes to infinity); restart on the right
  add({inverse(y_max), y_max});
  for (int i = m; i >= 1; --i) {
    const double y = y_max * std::pow(1e-4, 1.0 - static_cast<double>(i) / m);
    add({inverse(y), y});
  }
  add({R, 0.0});
  add({x_max, 0.0});
  return out;
}

SkilletProfile skillet_boundary(double support_radius, double height) {
  if (!(support_radius > 1.0))
    throw std::invalid_argument("skillet support radius must exceed 1");
  if (!(height > 0)) throw std::invalid_argument("skillet height must be positive");
  SkilletProfile p;
  p.support_radius = support_radius;
  p.height = height;
  if (!p.convex_on_finite_part())
    throw std::runtime_error("skillet profile lost convexity");
  return p;
}

double BridgeSpec::measured_width(int grid) const {
  // sup over interior sample points of the distance to the polygon boundary
  Vec2 lo{1e300, 1e300}, hi{-1e300, -1e300};
  for (const auto& p : tube_polygon) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  auto dist_to_boundary = [&](Vec2 q) {
    double d = 1e300;
    const std::size_t n = tube_polygon.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2 a = tube_polygon[i], b = tube_polygon[(i + 1) % n];
      const Vec2 ab = b - a;
      const double l2 = ab.norm2();
      const double t = l2 > 0 ? std::clamp((q - a).dot(ab) / l2, 0.0, 1.0) : 0.0;
      d = std::min(d, (q - (a + ab * t)).norm());
    }
    return d;
  };
  double sup = 0;
  for (int i = 0; i <= grid; ++i)
    for (int j = 0; j <= grid; ++j) {
      const Vec2 q{lo.x + (hi.x - lo.x) * i / grid,
                   lo.y + (hi.y - lo.y) * j / grid};
      if (!point_in_polygon(q, tube_polygon)) continue;
      sup = std::max(sup, dist_to_boundary(q));
    }
  return sup;
}

namespace {

struct SagGraph {
  // piecewise-linear eta(xi): the base curve over its junction tangent
  std::vector<double> xi, eta;

  double eval(double x) const {
    if (xi.empty()) return 0.0;
    if (x <= xi.front()) return eta.front();
    if (x >= xi.back()) return eta.back();
    auto it = std::upper_bound(xi.begin(), xi.end(), x);
    const std::size_t j = static_cast<std::size_t>(it - xi.begin());
    const double t = (x - xi[j - 1]) / (xi[j] - xi[j - 1]);
    return eta[j - 1] * (1 - t) + eta[j] * t;
  }
};

SagGraph build_sag(const IdealArc& base, Vec2 origin, Vec2 along, Vec2 inward,
                   double extent) {
  // project base samples near the junction into the frame and keep the
  // monotone graph segment around xi = 0
  std::vector<std::pair<double, double>> proj;
  for (const auto& p : base.pts) {
    const Vec2 d = p - origin;
    const double x = d.dot(along), y = d.dot(inward);
    if (std::abs(x) < 2.5 * extent && std::abs(y) < 2.5 * extent)
      proj.push_back({x, y});
  }
  std::sort(proj.begin(), proj.end());
  SagGraph g;
  for (auto& [x, y] : proj) {
    if (!g.xi.empty() && x - g.xi.back() < 1e-14) continue;
    g.xi.push_back(x);
    g.eta.push_back(y);
  }
  g.xi.push_back(0.0);  // ensure the junction itself is in the table
  g.eta.push_back(0.0);
  // re-sort with the inserted origin
  std::vector<std::size_t> idx(g.xi.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t a, std::size_t b) { return g.xi[a] < g.xi[b]; });
  SagGraph s;
  for (std::size_t i : idx) {
    if (!s.xi.empty() && g.xi[i] - s.xi.back() < 1e-14) continue;
    s.xi.push_back(g.xi[i]);
    s.eta.push_back(g.eta[i]);
  }
  return s;
}

double smooth_fade(double s, double s0, double s1) {
  if (s <= s0) return 1.0;
  if (s >= s1) return 0.0;
  const double t = (s - s0) / (s1 - s0);
  return 0.5 * (1.0 + std::cos(std::numbers::pi * t));
}

}  // namespace

BridgeFamily make_bridge_family(const IdealCurveSet& base, const IdealArc& arc,
                                const std::vector<double>& widths) {
  if (widths.empty()) throw std::invalid_argument("no widths");
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(widths[i] > 0)) throw std::invalid_argument("bridge width must be > 0");
    if (i > 0 && !(widths[i] < widths[i - 1]))
      throw std::invalid_argument("widths must be strictly decreasing");
  }
  const auto angles = orthogonality_check(arc, base, 1e-5);
  const double quarter = std::numbers::pi / 2.0;
  if (std::abs(angles.first - quarter) > 1e-3 ||
      std::abs(angles.second - quarter) > 1e-3)
    throw std::runtime_error("bridge arc does not meet the boundary orthogonally");

  const SkilletProfile prof = skillet_boundary(2.0, 1.0);
  const double R = prof.support_radius;
  const double L = arc.length();

  // junction data
  struct JData {
    JunctionFrame frame;
    const IdealArc* comp;
    double s_on_comp;
    SagGraph sag;
  };
  auto junction = [&](Vec2 endpoint, Vec2 gamma_tangent_in) {
    JData jd;
    double best = 1e300;
    for (const auto& comp : base.components) {
      const auto [s, d] = comp.closest_point(endpoint);
      if (d < best) {
        best = d;
        jd.comp = &comp;
        jd.s_on_comp = s;
      }
    }
    jd.frame.origin = jd.comp->point_at_arclength(jd.s_on_comp);
    const Vec2 T = gamma_tangent_in.normalized();
    jd.frame.inward = T;
    // local x axis = Gamma's left normal (equal to the base tangent up to
    // the orthogonality tolerance)
    jd.frame.along = T.perp();
    return jd;
  };

  const Vec2 tan_a = (arc.pts[1] - arc.pts[0]).normalized();
  const Vec2 tan_b =
      (arc.pts[arc.pts.size() - 2] - arc.pts[arc.pts.size() - 1]).normalized();
  JData ja = junction(arc.pts.front(), tan_a);
  JData jb = junction(arc.pts.back(), tan_b);

  BridgeFamily family;
  for (double w : widths) {
    // cap scale c with declared width w realized mid-tube: c xi(L/(2c)) = w
    double c = w / prof.inverse(std::max(L / (2.0 * w), 1e-3));
    for (int it = 0; it < 4; ++it)
      c = w / prof.inverse(std::max(L / (2.0 * c), 1e-3));
    if (R * c * 2.2 > L)
      throw std::runtime_error("bridge caps overlap: arc too short for width");

    ja.sag = build_sag(*ja.comp, ja.frame.origin, ja.frame.along,
                       ja.frame.inward, R * c);
    jb.sag = build_sag(*jb.comp, jb.frame.origin, jb.frame.along,
                       jb.frame.inward, R * c);

    auto halfwidth = [&](double s) {
      const double v = std::min(s, L - s) / c;
      return c * prof.inverse(std::max(v, 0.0));
    };

    // side curve for sign sigma, ordered from junction A to junction B
    auto side_curve = [&](double sigma) {
      std::vector<Vec2> out;
      const double v_knee = 0.35;
      const double x_knee = prof.inverse(v_knee);  // about 1.65
      // landing at A: x from R down to x_knee (in cap units)
      const int m_land = 24;
      for (int i = 0; i <= m_land; ++i) {
        const double xu = R - (R - x_knee) * (static_cast<double>(i) / m_land);
        const double x = sigma * c * xu;
        const double y = c * prof.eval(xu);
        out.push_back(ja.frame.origin + ja.frame.along * x +
                      ja.frame.inward * (y + ja.sag.eval(x)));
      }
      // rise + tube, parametrized by arclength along Gamma
      std::vector<double> svals;
      for (double s = v_knee * c * 1.3; s < 8.0 * c; s *= 1.35)
        svals.push_back(s);
      const double ds = std::min(L / 48.0, 3.0 * c);
      for (double s = 8.0 * c; s <= L - 8.0 * c; s += ds) svals.push_back(s);
      for (double s = 8.0 * c; s > v_knee * c * 1.3; s /= 1.35)
        svals.push_back(L - s);
      std::sort(svals.begin(), svals.end());
      const double fade_in = 6.0 * c, fade_out = std::min(L / 2.5, 26.0 * c);
      for (double s : svals) {
        if (s <= 0 || s >= L) continue;
        const Vec2 g = arc.point_at_arclength(s);
        const Vec2 T = arc.tangent_at_arclength(s);
        const Vec2 N = T.perp();
        Vec2 p = g + N * (sigma * halfwidth(s));
        const double xa = (p - ja.frame.origin).dot(ja.frame.along);
        const double xb = (p - jb.frame.origin).dot(jb.frame.along);
        p = p + ja.frame.inward * (smooth_fade(s, fade_in, fade_out) * ja.sag.eval(xa));
        p = p + jb.frame.inward * (smooth_fade(L - s, fade_in, fade_out) * jb.sag.eval(xb));
        out.push_back(p);
      }
      // landing at B: x from x_knee up to R (in cap units)
      for (int i = 0; i <= m_land; ++i) {
        const double xu = x_knee + (R - x_knee) * (static_cast<double>(i) / m_land);
        // sigma side continuity: the left normal at B points along -along_B
        // direction consistent with the tube; compute sign via the tube
        const Vec2 NL = arc.tangent_at_arclength(L).perp();
        const double sgn = sigma * NL.dot(jb.frame.along) >= 0 ? sigma : -sigma;
        const double x = (sgn)*c * xu * (NL.dot(jb.frame.along) >= 0 ? 1.0 : -1.0);
        const double y = c * prof.eval(xu);
        out.push_back(jb.frame.origin + jb.frame.along * (sigma * NL.dot(jb.frame.along) * c * xu) +
                      jb.frame.inward * (y + jb.sag.eval(sigma * NL.dot(jb.frame.along) * c * xu)));
        (void)x;
      }
      // dedupe consecutive near-identical samples
      std::vector<Vec2> clean;
      for (const auto& p : out)
        if (clean.empty() || (clean.back() - p).norm() > 1e-13) clean.push_back(p);
      return clean;
    };

    const auto side_plus = side_curve(+1.0);
    const auto side_minus = side_curve(-1.0);

    // collision checks: sides must stay clear of the other components and of
    // each other away from the junction caps
    auto polyline_min_dist = [](const std::vector<Vec2>& a,
                                const std::vector<Vec2>& b) {
      double d = 1e300;
      for (const auto& p : a)
        for (std::size_t i = 0; i + 1 < b.size(); ++i) {
          const Vec2 ab = b[i + 1] - b[i];
          const double l2 = ab.norm2();
          const double t =
              l2 > 0 ? std::clamp((p - b[i]).dot(ab) / l2, 0.0, 1.0) : 0.0;
          d = std::min(d, (p - (b[i] + ab * t)).norm());
        }
      return d;
    };
    for (const auto& comp : base.components) {
      if (&comp == ja.comp || &comp == jb.comp) continue;
      if (polyline_min_dist(side_plus, comp.pts) < 0.5 * c ||
          polyline_min_dist(side_minus, comp.pts) < 0.5 * c)
        throw std::runtime_error("bridge tube hits another boundary component");
    }

    // surgical output: cut the excised spans out of the touched components
    // and stitch in the side curves
    IdealCurveSet out_set;
    const double len_a = ja.comp->length();
    auto span_contains = [&](double s_cut_lo, double s_cut_hi, double s,
                             double total) {
      // is arclength s inside the cyclic interval (lo, hi)?
      const double span = std::fmod(s_cut_hi - s_cut_lo + total, total);
      const double off = std::fmod(s - s_cut_lo + total, total);
      return off > 0 && off < span;
    };

    // landing arclength positions on the base components
    const double cut_a = R * c;
    auto landing_s = [&](const JData& jd, double sgn) {
      const Vec2 land = jd.frame.origin + jd.frame.along * (sgn * cut_a) +
                        jd.frame.inward * jd.sag.eval(sgn * cut_a);
      return jd.comp->closest_point(land).first;
    };
    const double sa_plus = landing_s(ja, +1), sa_minus = landing_s(ja, -1);
    const double sb_plus = landing_s(jb, +1), sb_minus = landing_s(jb, -1);

    // assemble kept arcs per touched component
    struct Cut {
      double lo, hi;  // excised cyclic span (lo -> hi traversing the span)
    };
    auto kept_arcs = [&](const IdealArc& comp, std::vector<Cut> cuts) {
      std::vector<std::vector<Vec2>> arcs;
      const double total = comp.length();
      const std::size_t n = comp.pts.size();
      // sample arclengths
      std::vector<double> sample_s(n);
      double acc = 0;
      for (std::size_t i = 0; i < n; ++i) {
        sample_s[i] = acc;
        acc += (comp.pts[(i + 1) % n] - comp.pts[i]).norm();
      }
      auto excised = [&](double s) {
        for (const auto& cut : cuts)
          if (span_contains(cut.lo, cut.hi, s, total)) return true;
        return false;
      };
      // walk cut boundaries in order: each kept arc runs from one cut's hi
      // to the next cut's lo
      std::vector<Cut> ordered = cuts;
      std::sort(ordered.begin(), ordered.end(),
                [](const Cut& a, const Cut& b) { return a.hi < b.hi; });
      for (std::size_t kcut = 0; kcut < ordered.size(); ++kcut) {
        const double s_start = ordered[kcut].hi;
        const double s_end = ordered[(kcut + 1) % ordered.size()].lo;
        std::vector<Vec2> arcp;
        arcp.push_back(comp.point_at_arclength(s_start));
        for (std::size_t i = 0; i < n; ++i) {
          const double s = sample_s[i];
          if (span_contains(s_start, s_end, s, total) && !excised(s))
            arcp.push_back(comp.pts[i]);
        }
        // order by cyclic offset from s_start
        std::sort(arcp.begin() + 1, arcp.end(), [&](Vec2 p, Vec2 q) {
          const double sp = comp.closest_point(p).first;
          const double sq = comp.closest_point(q).first;
          return std::fmod(sp - s_start + total, total) <
                 std::fmod(sq - s_start + total, total);
        });
        arcp.push_back(comp.point_at_arclength(s_end));
        std::vector<Vec2> clean;
        for (const auto& p : arcp)
          if (clean.empty() || (clean.back() - p).norm() > 1e-13)
            clean.push_back(p);
        arcs.push_back(std::move(clean));
      }
      return arcs;
    };

    std::vector<std::vector<Vec2>> open_arcs;
    if (ja.comp == jb.comp) {
      auto arcs = kept_arcs(*ja.comp, {{sa_minus, sa_plus}, {sb_plus, sb_minus}});
      // orientations: cut spans must traverse through the junction origin;
      // decide by testing whether the origin lies inside the span
      // (retry with swapped span if not)
      // simple approach: regenerate with spans oriented to contain origin
      auto s_origin_a = ja.s_on_comp;
      const double total = ja.comp->length();
      auto orient = [&](double lo, double hi, double inside) {
        const double span = std::fmod(hi - lo + total, total);
        const double off = std::fmod(inside - lo + total, total);
        if (off > 0 && off < span) return Cut{lo, hi};
        return Cut{hi, lo};
      };
      const Cut cut_a2 = orient(sa_minus, sa_plus, s_origin_a);
      const Cut cut_b2 = orient(sb_plus, sb_minus, jb.s_on_comp);
      arcs = kept_arcs(*ja.comp, {cut_a2, cut_b2});
      for (auto& a : arcs) open_arcs.push_back(std::move(a));
    } else {
      const double total_a = ja.comp->length();
      const double total_b = jb.comp->length();
      auto orient = [&](const IdealArc* comp, double lo, double hi,
                        double inside, double total) {
        const double span = std::fmod(hi - lo + total, total);
        const double off = std::fmod(inside - lo + total, total);
        (void)comp;
        if (off > 0 && off < span) return Cut{lo, hi};
        return Cut{hi, lo};
      };
      auto arcs_a = kept_arcs(*ja.comp, {orient(ja.comp, sa_minus, sa_plus,
                                                ja.s_on_comp, total_a)});
      auto arcs_b = kept_arcs(*jb.comp, {orient(jb.comp, sb_plus, sb_minus,
                                                jb.s_on_comp, total_b)});
      for (auto& a : arcs_a) open_arcs.push_back(std::move(a));
      for (auto& a : arcs_b) open_arcs.push_back(std::move(a));
    }
    open_arcs.push_back(side_plus);
    open_arcs.push_back(side_minus);

    // stitch open arcs into closed loops by endpoint matching
    const double stitch = 1e-7 * std::max(1.0, L);
    std::vector<bool> used(open_arcs.size(), false);
    for (std::size_t seed = 0; seed < open_arcs.size(); ++seed) {
      if (used[seed]) continue;
      used[seed] = true;
      std::vector<Vec2> loop = open_arcs[seed];
      int guard = 0;
      while ((loop.front() - loop.back()).norm() > stitch) {
        if (++guard > static_cast<int>(open_arcs.size()) + 2)
          throw std::runtime_error("bridge surgery failed to stitch boundary");
        bool ext = false;
        for (std::size_t j = 0; j < open_arcs.size() && !ext; ++j) {
          if (used[j]) continue;
          auto& cand = open_arcs[j];
          if ((cand.front() - loop.back()).norm() <= stitch) {
            loop.insert(loop.end(), cand.begin() + 1, cand.end());
            used[j] = ext = true;
          } else if ((cand.back() - loop.back()).norm() <= stitch) {
            loop.insert(loop.end(), cand.rbegin() + 1, cand.rend());
            used[j] = ext = true;
          }
        }
        if (!ext)
          throw std::runtime_error("bridge surgery: unmatched arc endpoint");
      }
      loop.pop_back();
      IdealArc comp;
      comp.closed = true;
      comp.pts = std::move(loop);
      out_set.components.push_back(std::move(comp));
    }
    // untouched components pass through
    for (const auto& comp : base.components) {
      if (&comp == ja.comp || &comp == jb.comp) continue;
      out_set.components.push_back(comp);
    }

    // the bridge polygon P itself (for width checks and region bookkeeping)
    BridgeSpec spec;
    spec.arc = arc;
    spec.width = w;
    spec.cap_scale = c;
    spec.frame_a = ja.frame;
    spec.frame_b = jb.frame;
    {
      std::vector<Vec2> poly = side_plus;
      // end arc at B: walk the base between the two landings through origin_B
      auto end_arc = [&](const JData& jd, Vec2 from, Vec2 to) {
        std::vector<Vec2> seg;
        const double total = jd.comp->length();
        double s0 = jd.comp->closest_point(from).first;
        double s1 = jd.comp->closest_point(to).first;
        // traverse through the junction origin
        const double span01 = std::fmod(s1 - s0 + total, total);
        const double off = std::fmod(jd.s_on_comp - s0 + total, total);
        const bool forward = off > 0 && off < span01;
        seg.push_back(from);
        const int steps = 16;
        for (int i = 1; i < steps; ++i) {
          const double t = static_cast<double>(i) / steps;
          const double s = forward
                               ? s0 + span01 * t
                               : s0 - std::fmod(s0 - s1 + total, total) * t;
          seg.push_back(jd.comp->point_at_arclength(s));
        }
        seg.push_back(to);
        return seg;
      };
      auto eb = end_arc(jb, side_plus.back(), side_minus.back());
      poly.insert(poly.end(), eb.begin() + 1, eb.end());
      poly.insert(poly.end(), side_minus.rbegin() + 1, side_minus.rend());
      auto ea = end_arc(ja, side_minus.front(), side_plus.front());
      poly.insert(poly.end(), ea.begin() + 1, ea.end() - 1);
      spec.tube_polygon = std::move(poly);
    }

    family.boundaries.push_back(std::move(out_set));
    family.specs.push_back(std::move(spec));
  }
  return family;
}

namespace {

double dist_to_polyline_set(Vec2 q, const std::vector<std::vector<Vec2>>& polys) {
  double d = 1e300;
  for (const auto& poly : polys)
    for (std::size_t i = 0; i + 1 < poly.size(); ++i) {
      const Vec2 ab = poly[i + 1] - poly[i];
      const double l2 = ab.norm2();
      const double t = l2 > 0 ? std::clamp((q - poly[i]).dot(ab) / l2, 0.0, 1.0) : 0.0;
      d = std::min(d, (q - (poly[i] + ab * t)).norm());
    }
  return d;
}

}  // namespace

ShrinkReport check_nicely_shrinking(const BridgeFamily& family,
                                    const std::vector<Vec2>& sample_points,
                                    double window) {
  ShrinkReport rep;
  if (family.boundaries.size() != sample_points.size()) {
    rep.failed = true;
    rep.reason = "one sample point per family member required";
    return rep;
  }
  for (std::size_t i = 1; i < family.specs.size(); ++i) {
    if (!(family.specs[i].width < family.specs[i - 1].width)) {
      rep.failed = true;
      rep.reason = "widths are not strictly decreasing";
      return rep;
    }
  }

  const SkilletProfile prof = skillet_boundary(2.0, 1.0);
  const auto skillet_ref = prof.boundary_polyline(1.4 * window, 1.4 * window, 400);

  for (std::size_t i = 0; i < family.boundaries.size(); ++i) {
    const double w = family.specs[i].width;
    const Vec2 center = sample_points[i];

    // rescaled curve pieces inside an extended window
    std::vector<std::vector<Vec2>> rescaled;
    for (const auto& comp : family.boundaries[i].components) {
      std::vector<Vec2> run;
      const std::size_t n = comp.pts.size();
      for (std::size_t k = 0; k <= n; ++k) {
        const Vec2 q = (comp.pts[k % n] - center) / w;
        if (std::abs(q.x) < 1.6 * window && std::abs(q.y) < 1.6 * window) {
          run.push_back(q);
        } else if (!run.empty()) {
          rescaled.push_back(std::move(run));
          run.clear();
        }
      }
      if (!run.empty()) rescaled.push_back(std::move(run));
    }
    std::vector<Vec2> cloud;
    for (const auto& r : rescaled)
      for (const auto& p : r)
        if (std::abs(p.x) <= window && std::abs(p.y) <= window) cloud.push_back(p);

    ShrinkSample out;
    out.width = w;
    if (cloud.empty()) {
      rep.failed = true;
      rep.reason = "sample window contains no boundary points";
      return rep;
    }

    // principal direction of the windowed cloud
    Vec2 mean{0, 0};
    for (const auto& p : cloud) mean = mean + p;
    mean = mean / static_cast<double>(cloud.size());
    double sxx = 0, sxy = 0, syy = 0;
    for (const auto& p : cloud) {
      const Vec2 d = p - mean;
      sxx += d.x * d.x;
      sxy += d.x * d.y;
      syy += d.y * d.y;
    }
    const double tr = sxx + syy, det = sxx * syy - sxy * sxy;
    const double lam = 0.5 * tr + std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
    Vec2 dir = std::abs(sxy) > 1e-14 ? Vec2{lam - syy, sxy}.normalized()
                                     : (sxx >= syy ? Vec2{1, 0} : Vec2{0, 1});

    // --- distance to two parallel lines at distance 2 ---
    {
      const Vec2 nrm = dir.perp();
      double c0 = 0;
      for (const auto& p : cloud) c0 += (p - mean).dot(nrm);
      c0 /= static_cast<double>(cloud.size());
      double sup_pts = 0;
      for (const auto& p : cloud) {
        const double d = std::abs(std::abs((p - mean).dot(nrm) - c0) - 1.0);
        sup_pts = std::max(sup_pts, d);
      }
      // lines -> curve direction
      double sup_lines = 0;
      for (int k = -40; k <= 40; ++k) {
        const double t = window * k / 40.0;
        for (double sgn : {-1.0, 1.0}) {
          const Vec2 q = mean + dir * t + nrm * (c0 + sgn);
          if (std::abs(q.x) > window || std::abs(q.y) > window) continue;
          sup_lines = std::max(sup_lines, dist_to_polyline_set(q, rescaled));
        }
      }
      out.dist_parallel_lines = std::max(sup_pts, sup_lines);
    }

    // --- distance to the model skillet with junction at the origin ---
    {
      double best = 1e300;
      for (int rot = 0; rot < 4; ++rot) {
        const Vec2 ex = rot == 0   ? dir
                        : rot == 1 ? dir * -1.0
                        : rot == 2 ? dir.perp()
                                   : dir.perp() * -1.0;
        const Vec2 ey = ex.perp();
        for (double flip : {1.0, -1.0}) {
          std::vector<std::vector<Vec2>> ref(1);
          for (const auto& p : skillet_ref)
            ref[0].push_back(ex * p.x + ey * (flip * p.y));
          double sup_a = 0;
          for (const auto& p : cloud)
            sup_a = std::max(sup_a, dist_to_polyline_set(p, ref));
          double sup_b = 0;
          for (const auto& p : ref[0]) {
            if (std::abs(p.x) > window || std::abs(p.y) > window) continue;
            sup_b = std::max(sup_b, dist_to_polyline_set(p, rescaled));
          }
          best = std::min(best, std::max(sup_a, sup_b));
        }
      }
      out.dist_skillet = best;
    }

    out.classification = out.dist_parallel_lines <= out.dist_skillet
                             ? "parallel-lines"
                             : "skillet";
    rep.samples.push_back(out);
  }

  for (std::size_t i = 1; i < rep.samples.size(); ++i) {
    const double prev = std::min(rep.samples[i - 1].dist_parallel_lines,
                                 rep.samples[i - 1].dist_skillet);
    const double cur = std::min(rep.samples[i].dist_parallel_lines,
                                rep.samples[i].dist_skillet);
    if (cur > prev * 1.05 + 1e-9) rep.monotone = false;
  }
  if (!rep.monotone) {
    rep.failed = true;
    rep.reason = "distances not monotone nonincreasing";
  }
  return rep;
}

}  // namespace hplateau
