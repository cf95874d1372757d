#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "hplateau/strip.hpp"

using namespace hplateau;

namespace {

// Independent quadrature oracle for I = int_0^1 t^2 (1-t^4)^{-1/2} dt:
// composite Simpson on the smooth substitution t^2 = sin(phi), i.e.
// I = (1/2) int_0^{pi/2} sqrt(sin(phi)) dphi, with the sqrt corner at 0
// removed by phi = s^2.
double oracle_peak_integral(int n) {
  const double top = std::sqrt(std::numbers::pi / 2.0);
  auto f = [](double s) { return std::sqrt(std::sin(s * s)) * s; };
  double acc = 0;
  const double h = top / n;
  for (int i = 0; i < n; ++i) {
    const double a = i * h, b = a + h;
    acc += h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  }
  return acc;
}

// Analytic profile samples by inverting x(u) = int_u^{u0} s^2/sqrt(u0^4-s^4) ds
// with the first-integral slope; independent of the shooting code path.
struct AnalyticSample {
  double x, u, du;
};

double oracle_x_of_u(double u, double u0, int n) {
  // substitute s = u0 sqrt(sin a) on [asin((u/u0)^2), pi/2] after s^2 = u0^2 sin a:
  // integrand s^2 ds / sqrt(u0^4 - s^4) = (u0/2) sqrt(sin a) da  -- same kernel
  const double lo = std::asin((u / u0) * (u / u0));
  auto f = [&](double a) { return 0.5 * u0 * std::sqrt(std::sin(a)); };
  double acc = 0;
  const double h = (std::numbers::pi / 2.0 - lo) / n;
  for (int i = 0; i < n; ++i) {
    const double a = lo + i * h, b = a + h;
    acc += h / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
  }
  return acc;
}

AnalyticSample oracle_sample_at_x(double x, double u0) {
  // bisection for u with x(u) = x
  double lo = 1e-9, hi = u0 * (1 - 1e-12);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (oracle_x_of_u(mid, u0, 4000) > x)
      lo = mid;
    else
      hi = mid;
  }
  const double u = 0.5 * (lo + hi);
  const double du = -std::sqrt(std::max(std::pow(u0, 4) - std::pow(u, 4), 0.0)) / (u * u);
  return {x, u, du};
}

}  // namespace

TEST_CASE("peak height matches the quadrature oracle") {
  const double I = oracle_peak_integral(4000);
  CHECK(I == doctest::Approx(0.599070).epsilon(1e-5));
  const double u0 = strip_peak_height();
  CHECK(u0 == doctest::Approx(1.0 / I).epsilon(1e-9));
  CHECK(std::abs(u0 - 1.66925) < 1e-4);
  CHECK(u0 * 0.599070 == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("peak quadrature is converged in its own step") {
  const double a = oracle_peak_integral(2000);
  const double b = oracle_peak_integral(4000);
  CHECK(std::abs(a - b) < 1e-10);
  CHECK(std::abs(strip_peak_integral() - b) < 1e-10);
}

TEST_CASE("shooting profile hits the oracle peak and endpoint law") {
  const auto prof = solve_strip_profile(4096);
  CHECK(std::abs(prof.eval_u(0.0) - 1.66925) < 1e-4);
  CHECK(std::abs(prof.u0 - strip_peak_height()) < 1e-6);

  // endpoint behavior u^3 ~ 3 u0^2 (1 - x); at x = 1 - 1e-3 the law gives
  // u = 0.20295, which the profile must reproduce
  const double law = std::cbrt(3.0 * prof.u0 * prof.u0 * 1e-3);
  CHECK(prof.eval_u(1.0 - 1e-3) == doctest::Approx(law).epsilon(2e-3));
  CHECK(prof.eval_u(1.0 - 1e-3) < 0.21);
}

TEST_CASE("profile invariants: evenness, concavity, endpoints") {
  const auto prof = solve_strip_profile(2048);
  const std::size_t n = prof.x.size();
  for (std::size_t i = 0; i < n / 2; ++i)
    CHECK(std::abs(prof.u[i] - prof.u[n - 1 - i]) < 1e-9);
  // discrete concavity on the full grid
  for (std::size_t i = 1; i + 1 < n; ++i)
    CHECK(prof.u[i + 1] - 2 * prof.u[i] + prof.u[i - 1] < 0.0);
  // endpoint values below grid tolerance
  const double h = prof.grid_step();
  const double grid_tol = 1.6 * std::cbrt(3.0 * prof.u0 * prof.u0 * h);
  CHECK(prof.u.front() < grid_tol);
  CHECK(prof.u.back() < grid_tol);
}

TEST_CASE("first integral residual of the shooting solution") {
  const auto prof = solve_strip_profile(4096);
  CHECK(first_integral_residual(prof) < 1e-8);
}

TEST_CASE("first integral residual flags a perturbed node") {
  auto prof = solve_strip_profile(512);
  auto bumped = prof;
  bumped.u[bumped.u.size() / 3] += 1e-3;
  CHECK(first_integral_residual(bumped) > 1e-4);
}

TEST_CASE("analytic samples from quadrature inversion satisfy the first integral") {
  const double u0 = strip_peak_height();
  StripProfile prof;
  prof.u0 = u0;
  for (double x : {0.05, 0.15, 0.25, 0.35, 0.45, 0.55, 0.65, 0.75}) {
    const auto s = oracle_sample_at_x(x, u0);
    prof.x.push_back(s.x);
    prof.u.push_back(s.u);
    prof.du.push_back(s.du);
  }
  CHECK(first_integral_residual(prof) < 1e-10);
}

TEST_CASE("shooting peak converges at fourth order") {
  // u0 recovered by the discrete shoot at n, 2n, 4n against the independent
  // quadrature value; observed order in [3.5, 4.5]
  const double ref = strip_peak_height();
  std::vector<double> errs;
  for (std::size_t n : {512, 1024, 2048}) {
    const auto prof = solve_strip_profile(n);
    errs.push_back(std::abs(prof.u0 - ref));
  }
  const double p12 = std::log2(errs[0] / errs[1]);
  const double p23 = std::log2(errs[1] / errs[2]);
  CHECK(p12 > 3.5);
  CHECK(p12 < 4.5);
  CHECK(p23 > 3.5);
  CHECK(p23 < 4.5);
}

TEST_CASE("w* at the symmetric point and toward the edges") {
  const auto prof = solve_strip_profile(2048);
  CHECK(w_star(prof, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  // symmetry
  for (double x : {0.2, 0.5, 0.8})
    CHECK(std::abs(w_star(prof, x) - w_star(prof, -x)) < 1e-9);
  // monotone growth beyond |x| > 0.9
  double prev = w_star(prof, 0.9);
  for (double x = 0.91; x < 0.995; x += 0.01) {
    const double w = w_star(prof, x);
    CHECK(w > prev);
    prev = w;
  }
  // w* ~ x/u ~ (1-x)^(-1/3): at x = 0.999 that is about 4.9
  CHECK(w_star(prof, 0.999) > 4.0);
  CHECK_THROWS_AS(w_star(prof, 1.0), std::domain_error);
}

TEST_CASE("grid size below 16 is rejected") {
  CHECK_THROWS_AS(solve_strip_profile(8), std::invalid_argument);
}
