#include "sbm/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "sbm/errors.hpp"

namespace sbm {

namespace {
constexpr double kPi = std::numbers::pi;

// int_a^b f over a half-line-compatible range, a finite; b may be +inf.
double integrate_right(const RealFn& f, double a, double b) {
  if (std::isinf(b)) {
    // y = a + u / (1 - u)
    return integrate_endpoint_singular(
               [&](double u) {
                 if (!(u < 1.0)) return 0.0;
                 const double w = 1.0 - u;
                 return f(a + u / w) / (w * w);
               },
               0.0, 1.0, 1e-9)
        .value;
  }
  return integrate_endpoint_singular(f, a, b, 1e-9).value;
}
}  // namespace

double stable_ball_exit_time(int d, double alpha, double r, double x_norm) {
  if (!(x_norm < r)) return 0.0;
  return std::tgamma(0.5 * d) /
         (std::pow(2.0, alpha) * std::tgamma(1.0 + 0.5 * alpha) * std::tgamma(0.5 * (d + alpha))) *
         std::pow(r * r - x_norm * x_norm, 0.5 * alpha);
}

double stable_ball_poisson_kernel(int d, double alpha, double r, const Point& x, const Point& y) {
  const double xn = norm(x, d), yn = norm(y, d);
  if (!(xn < r)) throw DomainError("stable_ball_poisson_kernel: x must lie inside the ball");
  if (!(yn > r)) return 0.0;
  const double c = std::tgamma(0.5 * d) * std::pow(kPi, -0.5 * d - 1.0) * std::sin(0.5 * kPi * alpha);
  return c * std::pow((r * r - xn * xn) / (yn * yn - r * r), 0.5 * alpha) *
         std::pow(distance(x, y, d), -static_cast<double>(d));
}

double stable_interval_exit_mass(double alpha, double lo, double hi, double x, double a, double b) {
  if (!(lo < x && x < hi)) throw DomainError("stable_interval_exit_mass: x must lie inside");
  if (!(a <= b)) throw DomainError("stable_interval_exit_mass: need a <= b");
  const double c = 0.5 * (lo + hi), rho = 0.5 * (hi - lo);
  const double xc = x - c;
  const double pre = std::tgamma(0.5) * std::pow(kPi, -1.5) * std::sin(0.5 * kPi * alpha) *
                     std::pow((rho - xc) * (rho + xc), 0.5 * alpha);
  // Distance z beyond the endpoint, so that the endpoint singularity is
  // resolved without cancellation.  `gap` is the distance from x to that endpoint.
  auto side = [&](double gap, double z0, double z1) {
    return integrate_right(
        [&](double z) {
          if (!(z > 0.0)) return 0.0;
          return pre * std::pow(z * (z + 2.0 * rho), -0.5 * alpha) / (gap + z);
        },
        z0, z1);
  };
  double mass = 0.0;
  if (b > hi) mass += side(rho - xc, std::max(a, hi) - hi, b - hi);
  if (a < lo) mass += side(rho + xc, lo - std::min(b, lo), lo - a);
  return mass;
}

}  // namespace sbm
