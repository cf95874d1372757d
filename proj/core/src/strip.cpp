#include "hplateau/strip.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace hplateau {

namespace {

double adaptive_simpson(double (*f)(double), double a, double b, double fa,
                        double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double integrate(double (*f)(double), double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// int_0^1 t^2 (1-t^4)^{-1/2} dt after t^2 = sin(psi^2): the integrand
// sqrt(sin(psi^2)) * psi is smooth on [0, sqrt(pi/2)].
double peak_integrand(double psi) {
  return std::sqrt(std::max(std::sin(psi * psi), 0.0)) * psi;
}

struct OdeState {
  double u, v;  // v = u'
};

OdeState rk4_step(OdeState s, double h) {
  auto rhs = [](OdeState q) {
    return OdeState{q.v, -2.0 * (1.0 + q.v * q.v) / q.u};
  };
  OdeState k1 = rhs(s);
  OdeState k2 = rhs({s.u + 0.5 * h * k1.u, s.v + 0.5 * h * k1.v});
  OdeState k3 = rhs({s.u + 0.5 * h * k2.u, s.v + 0.5 * h * k2.v});
  OdeState k4 = rhs({s.u + h * k3.u, s.v + h * k3.v});
  return {s.u + h / 6.0 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
          s.v + h / 6.0 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

// Advance by up to h, splitting into substeps so each changes u by at most
// a small fraction; the slope blows up like (1-x)^{-2/3} toward the vanish
// point, so bail out once u drops below u_floor and report the distance
// actually covered.
double advance_capped(OdeState& s, double h, double max_rel_du,
                      double u_floor) {
  double covered = 0;
  int guard = 0;
  while (covered < h && s.u >= u_floor) {
    if (++guard > 200000) throw std::runtime_error("strip ODE step overflow");
    double step = h - covered;
    const double vel = std::abs(s.v);
    if (vel * step > max_rel_du * s.u)
      step = std::max(max_rel_du * s.u / vel, 1e-18);
    s = rk4_step(s, step);
    if (!(s.u > 0)) throw std::runtime_error("strip ODE crossed u = 0");
    covered += step;
  }
  return covered;
}

// Integrate from the peak with u(0) = u0_trial until u drops below u_stop;
// return the predicted x at which u vanishes via u^3 ~ 3 u0^2 (1 - x).
double shoot_vanish_x(double u0_trial, double step, double u_stop,
                      double max_rel_du) {
  OdeState s{u0_trial, 0.0};
  double x = 0.0;
  while (s.u >= u_stop) {
    if (x > 2.0) return 2.0;  // never came down: trial peak far too large
    x += advance_capped(s, step, max_rel_du, u_stop);
  }
  return x + s.u * s.u * s.u / (3.0 * u0_trial * u0_trial);
}

}  // namespace

double strip_peak_integral() {
  const double top = std::sqrt(std::numbers::pi / 2.0);
  return integrate(peak_integrand, 0.0, top, 1e-14);
}

double strip_peak_height() {
  const double I = strip_peak_integral();
  // Root of f(u0) = u0 * I - 1, bracketed and bisected per the contract.
  double lo = 0.5, hi = 4.0;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mid * I - 1.0 < 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

StripProfile solve_strip_profile(std::size_t n) {
  if (n < 16) throw std::invalid_argument("strip grid size must be >= 16");

  // Midpoint grid x_i = -1 + (i + 1/2) 2/n.  Offsets from x = 0 are integer
  // multiples of h for odd n and half-integer multiples for even n, so the
  // outward integration can land on grid points exactly.
  const double h = 2.0 / static_cast<double>(n);
  const double first = (n % 2 == 0) ? 0.5 * h : 0.0;
  const double u_stop = 10.0 * h;
  // substep cap proportional to h so the steep-tail integration error keeps
  // the overall fourth-order convergence in the grid size
  const double max_rel_du = std::min(0.01, 2.0 * h);

  // Secant iteration on the trial peak so the profile vanishes at x = 1.
  double a = 1.5, b = 1.8;
  double fa = shoot_vanish_x(a, h, u_stop, max_rel_du) - 1.0;
  double fb = shoot_vanish_x(b, h, u_stop, max_rel_du) - 1.0;
  double u0 = b;
  for (int it = 0; it < 60; ++it) {
    if (fb == fa) break;
    const double c = b - fb * (b - a) / (fb - fa);
    const double fc = shoot_vanish_x(c, h, u_stop, max_rel_du) - 1.0;
    a = b, fa = fb;
    b = c, fb = fc;
    u0 = c;
    if (std::abs(fc) < 1e-14 || std::abs(b - a) < 1e-15) break;
  }
  if (std::abs(fb) > 1e-8)
    throw std::runtime_error("strip shooting failed to reach u -> 0 at x = 1");

  // Final pass: states at |x| = first + k h.
  std::vector<OdeState> states;
  OdeState s{u0, 0.0};
  if (first > 0) advance_capped(s, first, max_rel_du, u_stop);
  states.push_back(s);
  double x = first;
  while (s.u >= u_stop && x + h < 1.0) {
    const double covered = advance_capped(s, h, max_rel_du, u_stop);
    x += covered;
    if (covered < h) break;  // entered the vanishing tail mid-cell
    states.push_back(s);
  }

  auto tail_u = [&](double xx) {
    return std::cbrt(std::max(3.0 * u0 * u0 * (1.0 - xx), 0.0));
  };

  StripProfile prof;
  prof.u0 = u0;
  prof.x.resize(n);
  prof.u.resize(n);
  prof.du.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = -1.0 + (static_cast<double>(i) + 0.5) * h;
    prof.x[i] = xi;
    const double ax = std::abs(xi);
    const auto k = static_cast<std::size_t>(std::llround((ax - first) / h));
    double uu, vv;
    if (k < states.size() && states[k].u >= u_stop) {
      uu = states[k].u;
      vv = states[k].v;
    } else {
      uu = tail_u(ax);
      vv = uu > 0 ? -u0 * u0 / (uu * uu) : 0.0;
    }
    prof.u[i] = uu;
    prof.du[i] = (xi >= 0 ? vv : -vv);
  }
  return prof;
}

double StripProfile::eval_u(double s) const {
  if (!(std::abs(s) < 1.0)) throw std::domain_error("strip eval: |x| >= 1");
  if (s <= x.front() || s >= x.back())
    return std::cbrt(std::max(3.0 * u0 * u0 * (1.0 - std::abs(s)), 0.0));
  const double h = grid_step();
  auto i = static_cast<std::size_t>((s - x.front()) / h);
  const std::size_t j = std::min(i, x.size() - 2);
  const double t = (s - x[j]) / h;
  const double h00 = (1 + 2 * t) * (1 - t) * (1 - t), h10 = t * (1 - t) * (1 - t);
  const double h01 = t * t * (3 - 2 * t), h11 = t * t * (t - 1);
  return h00 * u[j] + h * h10 * du[j] + h01 * u[j + 1] + h * h11 * du[j + 1];
}

double StripProfile::eval_du(double s) const {
  if (!(std::abs(s) < 1.0)) throw std::domain_error("strip eval: |x| >= 1");
  if (s <= x.front() || s >= x.back()) {
    const double uu = eval_u(s);
    if (uu <= 0) return s > 0 ? -1e18 : 1e18;
    return (s >= 0 ? -1.0 : 1.0) * u0 * u0 / (uu * uu);
  }
  const double h = grid_step();
  auto i = static_cast<std::size_t>((s - x.front()) / h);
  const std::size_t j = std::min(i, x.size() - 2);
  const double t = (s - x[j]) / h;
  const double g00 = 6 * t * (t - 1) / h, g10 = (3 * t - 1) * (t - 1);
  const double g01 = -6 * t * (t - 1) / h, g11 = t * (3 * t - 2);
  return g00 * u[j] + g10 * du[j] + g01 * u[j + 1] + g11 * du[j + 1];
}

double w_star(const StripProfile& profile, double x) {
  if (!(std::abs(x) < 1.0)) throw std::domain_error("w*: |x| >= 1");
  const double u = profile.eval_u(x);
  const double du = profile.eval_du(x);
  return (-x * du + u) / (u * std::sqrt(1.0 + du * du));
}

double first_integral_residual(const StripProfile& profile) {
  const double c = std::pow(profile.u0, 4);
  double worst = 0.0;
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    const double u = profile.u[i], v = profile.du[i];
    const double r = std::abs((1.0 + v * v) * u * u * u * u - c) / c;
    worst = std::max(worst, r);
  }
  return worst;
}

void write_strip_csv(const StripProfile& profile, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path);
  out << "x,u,du,wstar\n";
  out.precision(17);
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    out << profile.x[i] << ',' << profile.u[i] << ',' << profile.du[i] << ','
        << w_star(profile, profile.x[i]) << '\n';
  }
}

}  // namespace hplateau
