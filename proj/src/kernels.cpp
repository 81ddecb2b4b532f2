#include "sbm/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sbm/densities.hpp"
#include "sbm/errors.hpp"

namespace sbm {

namespace {

constexpr double kPi = std::numbers::pi;

std::optional<double> declared_gamma(const Cbf& phi, int d) {
  if (d >= 3) return std::nullopt;
  return phi.small_lambda_exponent();
}

}  // namespace

double heat_kernel(int d, double t, double r) {
  if (d < 1) throw DomainError("heat_kernel: d must be >= 1");
  if (!(t > 0.0)) throw DomainError("heat_kernel: t must be positive");
  return std::pow(4.0 * kPi * t, -0.5 * d) * std::exp(-r * r / (4.0 * t));
}

bool transience_check(const Cbf& phi, int d, std::optional<double> gamma, bool use_catalog) {
  if (d < 1) throw DomainError("transience_check: d must be >= 1");
  if (d >= 3) return true;
  const double half_d = 0.5 * d;
  if (gamma) {
    if (*gamma < 0.0 || *gamma >= half_d) return false;
    // liminf phi(l) / l^gamma > 0 requires the local exponent of phi at
    // l -> 0 not to exceed gamma.
    const double l = 1e-8;
    const double slope = phi.derivative(l) * l / phi(l);
    return slope <= *gamma + 1e-3;
  }
  if (use_catalog) {
    if (const auto g0 = phi.small_lambda_exponent()) return *g0 < half_d;
  }
  throw UndecidableError("transience in d <= 2 needs a declared small-lambda exponent gamma");
}

QuadratureResult subordination_integral(const RealFn& w, int d, double r,
                                        std::optional<double> gamma, const KernelOptions& opts) {
  if (d < 1) throw DomainError("subordination_integral: d must be >= 1");
  if (!(r > 0.0)) throw DomainError("subordination_integral: r must be positive");
  if (d <= 2 && !(gamma && *gamma < 0.5 * d)) {
    throw DomainError("subordination_integral: d <= 2 needs a tail exponent gamma < d/2");
  }
  const double r2 = r * r;
  const double hd = 0.5 * d;
  QuadratureOptions q;
  q.abs_tol = 0.0;
  q.rel_tol = opts.rel_tol;
  q.max_depth = opts.max_depth;
  // t = r^2 / (4s), s in [1/4, inf)
  const auto head = integrate_unchecked(
      [&](double s) {
        if (s > 745.0) return 0.0;
        const double t = r2 / (4.0 * s);
        return std::pow(kPi * r2 / s, -hd) * std::exp(-s) * w(t) * r2 / (4.0 * s * s);
      },
      0.25, std::numeric_limits<double>::infinity(), q);
  // t = r^2 e^y, y in [0, inf)
  const auto tail = integrate_unchecked(
      [&](double y) {
        const double t = r2 * std::exp(y);
        if (!(t < 1e250)) return 0.0;
        return std::pow(4.0 * kPi * t, -hd) * std::exp(-0.25 * std::exp(-y)) * w(t) * t;
      },
      0.0, std::numeric_limits<double>::infinity(), q);
  QuadratureResult out{head.value + tail.value, head.error + tail.error};
  if (!std::isfinite(out.value)) {
    throw NumericAccuracyError("subordination integral is not finite", out.error);
  }
  if (out.error > std::max(opts.abs_tol, 10.0 * opts.rel_tol * std::abs(out.value))) {
    throw NumericAccuracyError("subordination integral did not converge", out.error);
  }
  return out;
}

double power_law_limit_constant(int d, double beta) {
  return std::tgamma(0.5 * d + beta - 1.0) / (std::pow(4.0, 1.0 - beta) * std::pow(kPi, 0.5 * d));
}

double green_function(const Cbf& phi, int d, double r, const KernelOptions& opts) {
  const auto gamma = declared_gamma(phi, d);
  if (!transience_check(phi, d, gamma)) {
    throw DomainError("green_function: process is not transient in this dimension");
  }
  DensityEvaluator ev{phi, 32, InversionMode::closed_form,
                      std::numeric_limits<double>::infinity()};
  return subordination_integral([&](double t) { return potential_density_u(ev, t); }, d, r,
                                gamma, opts)
      .value;
}

double jump_kernel(const Cbf& phi, int d, double r, const KernelOptions& opts) {
  // mu is integrable at infinity, so any gamma below d/2 is a valid bound.
  const std::optional<double> gamma = d <= 2 ? std::optional<double>(0.0) : std::nullopt;
  return subordination_integral([&](double t) { return eval_levy_density(phi, t); }, d, r,
                                gamma, opts)
      .value;
}

double stable_green_closed_form(int d, double alpha, double r) {
  if (!(alpha < d)) throw DomainError("stable Green function needs alpha < d");
  return std::tgamma(0.5 * (d - alpha)) /
         (std::pow(4.0, 0.5 * alpha) * std::pow(kPi, 0.5 * d) * std::tgamma(0.5 * alpha)) *
         std::pow(r, alpha - d);
}

double stable_jump_closed_form(int d, double alpha, double r) {
  return 0.5 * alpha / std::tgamma(1.0 - 0.5 * alpha) * std::tgamma(0.5 * (d + alpha)) *
         std::pow(4.0, 0.5 * alpha) / std::pow(kPi, 0.5 * d) * std::pow(r, -d - alpha);
}

RadialKernelTable build_kernel_table(const Cbf& phi, int d, const std::vector<double>& radii,
                                     unsigned threads, const KernelOptions& opts) {
  RadialKernelTable tab;
  tab.dimension = d;
  tab.radii = radii;
  tab.phi_id = phi.to_json();
  bool transient = false;
  try {
    transient = transience_check(phi, d, declared_gamma(phi, d));
  } catch (const UndecidableError&) {
    transient = false;
  }
  tab.j_values.assign(radii.size(), 0.0);
  if (transient) tab.g_values.assign(radii.size(), 0.0);
  parallel_for(radii.size(), resolve_thread_count(threads), [&](std::size_t i) {
    tab.j_values[i] = jump_kernel(phi, d, radii[i], opts);
    if (transient) tab.g_values[i] = green_function(phi, d, radii[i], opts);
  });
  return tab;
}

RatioSpread g_asymptotic_ratio(const Cbf& phi, int d, const std::vector<double>& r_grid,
                               unsigned threads) {
  std::vector<double> q(r_grid.size());
  parallel_for(r_grid.size(), resolve_thread_count(threads), [&](std::size_t i) {
    const double r = r_grid[i];
    q[i] = green_function(phi, d, r) * std::pow(r, d) * phi(1.0 / (r * r));
  });
  return spread_of(q);
}

RatioSpread j_asymptotic_ratio(const Cbf& phi, int d, const std::vector<double>& r_grid,
                               unsigned threads) {
  std::vector<double> q(r_grid.size());
  parallel_for(r_grid.size(), resolve_thread_count(threads), [&](std::size_t i) {
    const double r = r_grid[i];
    q[i] = jump_kernel(phi, d, r) * std::pow(r, d) / phi(1.0 / (r * r));
  });
  return spread_of(q);
}

DoublingShift j_doubling_and_shift(const Cbf& phi, int d, double K, std::size_t points) {
  if (!(K > 0.0)) throw DomainError("j_doubling_and_shift: K must be positive");
  DoublingShift out;
  for (double r : log_grid(1e-3 * K, K, points)) {
    out.c4 = std::max(out.c4, jump_kernel(phi, d, r) / jump_kernel(phi, d, 2.0 * r));
  }
  const double hi = std::max(10.0 * K, 2.0);
  for (std::size_t i = 0; i < points; ++i) {
    const double r = 1.0 + (hi - 1.0) * static_cast<double>(i + 1) / static_cast<double>(points);
    out.c5 = std::max(out.c5, jump_kernel(phi, d, r) / jump_kernel(phi, d, r + 1.0));
  }
  return out;
}

}  // namespace sbm
