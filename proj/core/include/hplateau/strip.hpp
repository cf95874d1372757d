#pragma once

// The standard minimal strip over {|x| <= 1, z = 0}: translation-invariant
// graph z = u(x) solving  u u'' + 2 (1 + u'^2) = 0,  u(0) = u0, u'(0) = 0,
// u -> 0 at |x| -> 1.  Provides the ODE shooting solver, the peak height
// from its quadrature characterization, and the dilation Jacobi field w*.

#include <cstddef>
#include <string>
#include <vector>

namespace hplateau {

struct StripProfile {
  std::vector<double> x;   // uniform grid in (-1, 1), symmetric about 0
  std::vector<double> u;   // u(x_i) > 0
  std::vector<double> du;  // u'(x_i)
  double u0 = 0;           // peak height u(0)

  double grid_step() const { return x.size() > 1 ? x[1] - x[0] : 0.0; }

  // Hermite interpolation of u and u' at |s| < 1.
  double eval_u(double s) const;
  double eval_du(double s) const;
};

// Peak height u0 solving u0 * I = 1 with I = int_0^1 t^2 (1 - t^4)^{-1/2} dt,
// by adaptive quadrature plus a bisection root find.
double strip_peak_height();

// The quadrature constant I above (exposed for consistency checks).
double strip_peak_integral();

// Shooting solve on a uniform grid of n points.  n >= 16.
// The trial peak is adjusted until the integrated profile vanishes at
// |x| = 1 (predicted through the endpoint law u^3 ~ 3 u0^2 (1 - |x|)).
StripProfile solve_strip_profile(std::size_t n);

// Dilation Jacobi field w* = (-x u' + u) / (u sqrt(1 + u'^2)), |x| < 1.
double w_star(const StripProfile& profile, double x);

// max_i |(1 + u'^2) u^4 - u0^4| / u0^4 over the grid.
double first_integral_residual(const StripProfile& profile);

// CSV with columns x,u,du,wstar.
void write_strip_csv(const StripProfile& profile, const std::string& path);

}  // namespace hplateau
