#pragma once

#include <optional>
#include <vector>

#include "sbm/bernstein.hpp"
#include "sbm/numeric.hpp"

namespace sbm {

/// Gaussian transition density (4 pi t)^{-d/2} exp(-r^2 / (4t)).
double heat_kernel(int d, double t, double r);

/// Whether the subordinate Brownian motion in R^d is transient.
///
/// d >= 3 is always transient.  Otherwise a supplied `gamma` is validated
/// (gamma in [0, d/2) and phi(l) / l^gamma bounded below as l -> 0, judged by
/// the local log-log slope of phi at l = 1e-8); without gamma the catalog
/// small-lambda exponent decides when `use_catalog` is set.  Throws
/// UndecidableError when neither is available.
bool transience_check(const Cbf& phi, int d, std::optional<double> gamma = std::nullopt,
                      bool use_catalog = true);

struct KernelOptions {
  double rel_tol = 1e-7;
  /// Error estimates below this are accepted whatever the value.
  double abs_tol = 1e-30;
  unsigned max_depth = 12;
};

/// I(r) = int_0^inf (4 pi t)^{-d/2} exp(-r^2/(4t)) w(t) dt, split at t = r^2
/// (t = r^2/(4s) on the head, t = r^2 e^y on the tail).  For d <= 2 the
/// caller must declare an exponent gamma < d/2 with w(t) <= c t^{gamma-1}.
/// Throws NumericAccuracyError when the error estimate exceeds the tolerance.
QuadratureResult subordination_integral(const RealFn& w, int d, double r,
                                        std::optional<double> gamma = std::nullopt,
                                        const KernelOptions& opts = {});

/// lim_{r->0} I(r) r^{d+2beta-2} for w(t) = t^{-beta}:
/// Gamma(d/2 + beta - 1) / (4^{1-beta} pi^{d/2}).
double power_law_limit_constant(int d, double beta);

/// Green function G(r) of the subordinate process (transient case only;
/// throws DomainError otherwise).
double green_function(const Cbf& phi, int d, double r, const KernelOptions& opts = {});

/// Jump kernel j(r).
double jump_kernel(const Cbf& phi, int d, double r, const KernelOptions& opts = {});

/// Closed-form Riesz kernel of the isotropic alpha-stable process (alpha < d).
double stable_green_closed_form(int d, double alpha, double r);
/// Closed-form alpha-stable jump kernel.
double stable_jump_closed_form(int d, double alpha, double r);

struct RadialKernelTable {
  int dimension = 1;
  std::vector<double> radii;
  /// Empty when the process is not known to be transient.
  std::vector<double> g_values;
  std::vector<double> j_values;
  nlohmann::json phi_id;
};

/// Tabulates G (when transient) and j.  Radii are processed in parallel;
/// the output does not depend on the thread count.
RadialKernelTable build_kernel_table(const Cbf& phi, int d, const std::vector<double>& radii,
                                     unsigned threads = 1, const KernelOptions& opts = {});

/// min / max of G(r) r^d phi(r^-2).
RatioSpread g_asymptotic_ratio(const Cbf& phi, int d, const std::vector<double>& r_grid,
                               unsigned threads = 1);
/// min / max of j(r) r^d / phi(r^-2).
RatioSpread j_asymptotic_ratio(const Cbf& phi, int d, const std::vector<double>& r_grid,
                               unsigned threads = 1);

struct DoublingShift {
  /// max j(r)/j(2r) on a log grid of (0, K)
  double c4 = 0.0;
  /// max j(r)/j(r+1) on a grid of (1, 10K]
  double c5 = 0.0;
};

DoublingShift j_doubling_and_shift(const Cbf& phi, int d, double K, std::size_t points = 40);

}  // namespace sbm
