#pragma once

#include "sbm/montecarlo.hpp"

namespace sbm {

// Closed forms for the isotropic alpha-stable process (phi(l) = l^{alpha/2})
// killed on leaving a ball.

/// E_x[tau_{B(0,r)}] = Gamma(d/2) / (2^alpha Gamma(1 + alpha/2) Gamma((d + alpha)/2))
///                     * (r^2 - |x|^2)^{alpha/2}
double stable_ball_exit_time(int d, double alpha, double r, double x_norm);

/// Poisson kernel of B(0, r):
///   C ((r^2 - |x|^2) / (|y|^2 - r^2))^{alpha/2} |x - y|^{-d},
///   C = Gamma(d/2) pi^{-d/2 - 1} sin(pi alpha / 2),  |y| > r.
double stable_ball_poisson_kernel(int d, double alpha, double r, const Point& x, const Point& y);

/// d = 1: probability that the process started at x leaves the interval
/// (lo, hi) by landing in [a, b], where [a, b] lies outside the interval and
/// b may be infinite (a may be -infinite).
double stable_interval_exit_mass(double alpha, double lo, double hi, double x, double a, double b);

}  // namespace sbm
