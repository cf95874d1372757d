#include "hplateau/minimize.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace hplateau {

namespace {

inline double inv_sq(double z) { return 1.0 / (z * z); }

// Per-triangle quadrature weight (1/3) sum of 1/z^2 at edge midpoints.
inline double quad_weight(double za, double zb, double zc) {
  const double zab = 0.5 * (za + zb), zbc = 0.5 * (zb + zc),
               zca = 0.5 * (zc + za);
  return (inv_sq(zab) + inv_sq(zbc) + inv_sq(zca)) / 3.0;
}

}  // namespace

double hyperbolic_area(const TriMesh& m) {
  // fixed chunking so partial sums combine in a deterministic order
  const int F = m.n_triangles();
  constexpr int kChunks = 16;
  double partial[kChunks] = {0};
  for (int c = 0; c < kChunks; ++c) {
    const int lo = static_cast<int>(static_cast<long long>(F) * c / kChunks);
    const int hi = static_cast<int>(static_cast<long long>(F) * (c + 1) / kChunks);
    double acc = 0;
    for (int t = lo; t < hi; ++t) {
      const auto& tri = m.tris[t];
      const Vec3 a = m.pos[tri[0]], b = m.pos[tri[1]], cc = m.pos[tri[2]];
      const double ea = 0.5 * (b - a).cross(cc - a).norm();
      if (ea <= 1e-300) throw std::runtime_error("degenerate triangle in area");
      acc += ea * quad_weight(a.z, b.z, cc.z);
    }
    partial[c] = acc;
  }
  double total = 0;
  for (int c = 0; c < kChunks; ++c) total += partial[c];
  return total;
}

std::vector<Vec3> area_gradient(const TriMesh& m) {
  std::vector<Vec3> grad(m.pos.size(), Vec3{0, 0, 0});
  for (const auto& tri : m.tris) {
    const Vec3 a = m.pos[tri[0]], b = m.pos[tri[1]], c = m.pos[tri[2]];
    const Vec3 n = (b - a).cross(c - a);
    const double nn = n.norm();
    if (nn <= 1e-300) throw std::runtime_error("degenerate triangle in gradient");
    const double ea = 0.5 * nn;
    const double q = quad_weight(a.z, b.z, c.z);

    // dE/dp = ((opposite edge) x n) / (4 E)
    const Vec3 ga = (b - c).cross(n) * (1.0 / (4.0 * ea));
    const Vec3 gb = (c - a).cross(n) * (1.0 / (4.0 * ea));
    const Vec3 gc = (a - b).cross(n) * (1.0 / (4.0 * ea));
    grad[tri[0]] = grad[tri[0]] + ga * q;
    grad[tri[1]] = grad[tri[1]] + gb * q;
    grad[tri[2]] = grad[tri[2]] + gc * q;

    // dQ/dz_v = -(1/3) (1/z_vu^3 + 1/z_vw^3) for the two midpoints at v
    const double zab = 0.5 * (a.z + b.z), zbc = 0.5 * (b.z + c.z),
                 zca = 0.5 * (c.z + a.z);
    auto cube_inv = [](double z) { return 1.0 / (z * z * z); };
    grad[tri[0]].z += ea * (-(cube_inv(zab) + cube_inv(zca)) / 3.0);
    grad[tri[1]].z += ea * (-(cube_inv(zab) + cube_inv(zbc)) / 3.0);
    grad[tri[2]].z += ea * (-(cube_inv(zbc) + cube_inv(zca)) / 3.0);
  }
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (m.vclass[v] == VertexClass::fixed_vertex)
      grad[v] = {0, 0, 0};
    else if (m.vclass[v] == VertexClass::slide_xz)
      grad[v].y = 0;
  }
  return grad;
}

namespace {

double sup_norm(const std::vector<Vec3>& g) {
  double s = 0;
  for (const auto& v : g)
    s = std::max({s, std::abs(v.x), std::abs(v.y), std::abs(v.z)});
  return s;
}

double dot(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i].dot(b[i]);
  return s;
}

void axpy(std::vector<Vec3>& y, double alpha, const std::vector<Vec3>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = y[i] + x[i] * alpha;
}

double mean_edge_length(const TriMesh& m) {
  double s = 0;
  long n = 0;
  for (const auto& t : m.tris) {
    s += (m.pos[t[0]] - m.pos[t[1]]).norm();
    s += (m.pos[t[1]] - m.pos[t[2]]).norm();
    s += (m.pos[t[2]] - m.pos[t[0]]).norm();
    n += 3;
  }
  return n ? s / static_cast<double>(n) : 1.0;
}

std::vector<double> lumped_mass(const TriMesh& m) {
  std::vector<double> mass(m.pos.size(), 0.0);
  for (const auto& tri : m.tris) {
    const Vec3 a = m.pos[tri[0]], b = m.pos[tri[1]], c = m.pos[tri[2]];
    const double ah =
        0.5 * (b - a).cross(c - a).norm() * quad_weight(a.z, b.z, c.z);
    for (int k = 0; k < 3; ++k) mass[tri[k]] += ah / 3.0;
  }
  return mass;
}

// Tangential part of the uniform umbrella vector at each movable vertex,
// with the normal taken from area-weighted incident triangle normals.
std::vector<Vec3> tangential_umbrella(const TriMesh& m) {
  std::vector<Vec3> nrm(m.pos.size(), Vec3{0, 0, 0});
  for (int t = 0; t < m.n_triangles(); ++t) {
    const Vec3 n = m.triangle_normal(t);
    for (int v : m.tris[t]) nrm[v] = nrm[v] + n;
  }
  std::vector<Vec3> acc(m.pos.size(), Vec3{0, 0, 0});
  std::vector<int> deg(m.pos.size(), 0);
  for (const auto& t : m.tris)
    for (int e = 0; e < 3; ++e) {
      const int a = t[e], b = t[(e + 1) % 3];
      acc[a] = acc[a] + m.pos[b];
      ++deg[a];
      acc[b] = acc[b] + m.pos[a];
      ++deg[b];
    }
  std::vector<Vec3> out(m.pos.size(), Vec3{0, 0, 0});
  for (int v = 0; v < m.n_vertices(); ++v) {
    if (m.vclass[v] != VertexClass::free_vertex || deg[v] == 0) continue;
    const Vec3 u = acc[v] / static_cast<double>(deg[v]) - m.pos[v];
    const double nn = nrm[v].norm();
    if (nn < 1e-300) continue;
    const Vec3 nh = nrm[v] / nn;
    out[v] = u - nh * u.dot(nh);
  }
  return out;
}

// Min area over bands of triangles binned by Euclidean distance from the
// centroid axis, as a waist pinch detector for tube-like meshes.
double min_band_area(const TriMesh& m, double* mean_out) {
  Vec2 c{0, 0};
  for (const auto& p : m.pos) c = c + p.xy();
  c = c / static_cast<double>(m.pos.size());
  double rmin = 1e300, rmax = 0;
  for (const auto& p : m.pos) {
    const double r = (p.xy() - c).norm();
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  const int nb = 24;
  std::vector<double> band(nb, 0.0);
  for (int t = 0; t < m.n_triangles(); ++t) {
    const auto& tri = m.tris[t];
    const Vec2 cc = (m.pos[tri[0]].xy() + m.pos[tri[1]].xy() + m.pos[tri[2]].xy()) / 3.0;
    const double r = (cc - c).norm();
    int b = static_cast<int>((r - rmin) / std::max(rmax - rmin, 1e-30) * nb);
    b = std::clamp(b, 0, nb - 1);
    const Vec3 a = m.pos[tri[0]], bb = m.pos[tri[1]], ccc = m.pos[tri[2]];
    const double ea = 0.5 * (bb - a).cross(ccc - a).norm();
    band[b] += ea * quad_weight(a.z, bb.z, ccc.z);
  }
  double mn = 1e300, mean = 0;
  for (double v : band) {
    mn = std::min(mn, v);
    mean += v / nb;
  }
  if (mean_out) *mean_out = mean;
  return mn;
}

}  // namespace

AreaReport minimize_area(TriMesh& m, const MinimizeOptions& opts) {
  AreaReport rep;
  double area = hyperbolic_area(m);
  std::vector<Vec3> grad = area_gradient(m);

  auto masked = [&](std::vector<Vec3> g) {
    if (opts.coords == CoordMask::z_only)
      for (auto& v : g) v.x = v.y = 0;
    return g;
  };
  grad = masked(grad);
  double gsup = sup_norm(grad);

  auto preconditioned = [&](const std::vector<Vec3>& g) {
    std::vector<Vec3> p = g;
    if (opts.precondition_mass) {
      const auto mass = lumped_mass(m);
      for (std::size_t v = 0; v < p.size(); ++v)
        p[v] = p[v] / std::max(mass[v], 1e-300);
    }
    return p;
  };

  // scale-aware trial step so descent behaves the same across dilations
  const double len = mean_edge_length(m);
  double step;
  if (opts.precondition_mass)
    step = 0.05 * len * len;  // P grad has units of displacement
  else
    step = 0.1 * len * len / std::max(area, 1e-30);

  std::vector<Vec3> pgrad = preconditioned(grad);

  auto rms = [](const std::vector<Vec3>& v) {
    double s = 0;
    for (const auto& q : v) s += q.norm2();
    return std::sqrt(s / std::max<std::size_t>(v.size(), 1));
  };
  // Mix in tangential redistribution, scaled down with the gradient so the
  // regularizer does not displace the equilibrium surface; it only has to
  // outpace the parametrization drift, which is itself gradient-driven.
  auto compose_dir = [&](const std::vector<Vec3>& base) {
    std::vector<Vec3> d = base;
    if (opts.tangential_redistribution > 0 && opts.coords == CoordMask::all) {
      const auto tang = tangential_umbrella(m);
      const double tr = rms(tang);
      if (tr > 1e-300) {
        const double scale = opts.tangential_redistribution * rms(base) / tr;
        for (std::size_t i = 0; i < d.size(); ++i)
          d[i] = d[i] + tang[i] * scale;
      }
    }
    return d;
  };

  std::vector<Vec3> cg_dir = pgrad;  // conjugate memory, without smoothing
  for (auto& v : cg_dir) v = v * -1.0;
  std::vector<Vec3> dir = compose_dir(cg_dir);
  std::vector<Vec3> prev_grad;
  double prev_gpg = dot(grad, pgrad);

  std::vector<Vec3> ref_normals(m.tris.size());
  auto refresh_normals = [&]() {
    for (int t = 0; t < m.n_triangles(); ++t) ref_normals[t] = m.triangle_normal(t);
  };
  refresh_normals();

  // Track the best-stationarity state; near its floor the regularized flow
  // can orbit the balance point, and the caller should get the best mesh.
  std::vector<Vec3> best_pos = m.pos;
  double best_gsup = gsup;
  double best_area = area;
  int last_progress_iter = 0;
  double area_mark = area;
  const int plateau_window = 800;

  int it = 0;
  for (; it < opts.max_iters; ++it) {
    if (gsup < opts.tol) {
      rep.converged = true;
      break;
    }
    if (it - last_progress_iter > plateau_window) break;  // frozen
    double gd = dot(grad, dir);
    if (gd >= 0) {  // lost descent, restart along -P grad
      cg_dir = pgrad;
      for (auto& v : cg_dir) v = v * -1.0;
      dir = compose_dir(cg_dir);
      gd = dot(grad, dir);
      if (gd >= 0) {  // tangential term still fights descent; drop it
        dir = cg_dir;
        gd = dot(grad, dir);
      }
    }

    double alpha = step * 2.0;
    bool accepted = false;
    TriMesh trial = m;
    double new_area = 0;
    for (int bt = 0; bt < 60; ++bt) {
      trial.pos = m.pos;
      axpy(trial.pos, alpha, dir);
      bool valid = true;
      for (const auto& p : trial.pos)
        if (!(p.z > 0)) {
          valid = false;
          break;
        }
      if (valid && opts.forbid_inversion) {
        for (int t = 0; t < trial.n_triangles() && valid; ++t)
          if (trial.triangle_normal(t).dot(ref_normals[t]) <= 0) valid = false;
      }
      if (valid) {
        bool degen = false;
        double a2 = 0;
        try {
          a2 = hyperbolic_area(trial);
        } catch (const std::runtime_error&) {
          degen = true;
        }
        if (!degen && a2 <= area + opts.armijo_c * alpha * gd) {
          accepted = true;
          new_area = a2;
          break;
        }
      }
      alpha *= 0.5;
      if (alpha * sup_norm(dir) < 1e-14 * std::max(len, 1e-30)) break;
    }
    if (!accepted) {
      rep.converged = false;
      break;  // line-search stall
    }
    m.pos = trial.pos;
    area = new_area;
    step = alpha;
    refresh_normals();

    prev_grad = grad;
    grad = masked(area_gradient(m));
    gsup = sup_norm(grad);
    pgrad = preconditioned(grad);

    // progress = a clearly better stationarity floor or a real area drop;
    // the slow corner-cutting creep counts as neither
    if (gsup < 0.995 * best_gsup) last_progress_iter = it;
    if (area <= area_mark * (1.0 - 1e-5)) {
      area_mark = area;
      last_progress_iter = it;
    }
    if (gsup < best_gsup) {
      best_gsup = gsup;
      best_pos = m.pos;
      best_area = area;
    }

    if (opts.step_rule == StepRule::conjugate_gradient) {
      // preconditioned Polak-Ribiere with automatic restart
      double num = 0;
      for (std::size_t i = 0; i < grad.size(); ++i)
        num += pgrad[i].dot(grad[i] - prev_grad[i]);
      const double beta = std::max(0.0, num / std::max(prev_gpg, 1e-300));
      for (std::size_t i = 0; i < cg_dir.size(); ++i)
        cg_dir[i] = pgrad[i] * -1.0 + cg_dir[i] * beta;
    } else {
      cg_dir = pgrad;
      for (auto& v : cg_dir) v = v * -1.0;
    }
    dir = compose_dir(cg_dir);
    prev_gpg = dot(grad, pgrad);
  }

  if (best_gsup < gsup) {
    m.pos = best_pos;
    area = best_area;
    gsup = best_gsup;
  }
  rep.area = area;
  rep.grad_norm = gsup;
  rep.iters = it;
  if (gsup < opts.tol) rep.converged = true;

  if (opts.detect_pinch) {
    double mean = 0;
    rep.min_waist_band_area = min_band_area(m, &mean);
    rep.pinch_suspected =
        rep.min_waist_band_area < opts.pinch_band_threshold * mean;
  }
  return rep;
}

}  // namespace hplateau
