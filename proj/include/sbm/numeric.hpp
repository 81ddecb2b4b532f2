#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace sbm {

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(Complex)>;

/// n log-spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t n);

/// The x2 refinement of log_grid(lo, hi, n): 2n-1 points containing the
/// original grid as every other point.
std::vector<double> refine_log_grid(double lo, double hi, std::size_t n);

/// Deterministic pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

/// min / max of a positive quantity over a grid, with spread = max/min.
struct RatioSpread {
  double min = 0.0;
  double max = 0.0;
  double spread() const { return max / min; }
};

RatioSpread spread_of(std::span<const double> values);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadratureOptions {
  double abs_tol = 1e-9;
  double rel_tol = 1e-7;
  /// Bisection depth of the adaptive Gauss-Kronrod rule; 2^10 panels of 15
  /// nodes is roughly the 10^4 node cap.
  unsigned max_depth = 10;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

/// Adaptive Gauss-Kronrod (15 point) on [a, b]; b may be +infinity.
/// Throws NumericAccuracyError when the error estimate exceeds
/// max(abs_tol, rel_tol * |value|).
QuadratureResult integrate(const RealFn& f, double a, double b,
                           const QuadratureOptions& opts = {});

/// Same contract, but never throws: the caller inspects `error`.
QuadratureResult integrate_unchecked(const RealFn& f, double a, double b,
                                     const QuadratureOptions& opts = {});

/// Double-exponential (tanh-sinh) rule on a finite interval; robust against
/// integrable endpoint singularities.
QuadratureResult integrate_endpoint_singular(const RealFn& f, double a, double b,
                                             double rel_tol = 1e-10);

// ---------------------------------------------------------------------------
// Numerical Laplace inversion
// ---------------------------------------------------------------------------

enum class InversionMethod { talbot, gaver_stehfest };

/// Fixed-Talbot inversion (Abate-Valko contour) with `nodes` nodes.  The
/// transform must be real on the positive axis and analytic off (-inf, 0];
/// only upper-half-plane values are requested.
double talbot_invert(const ComplexFn& transform, double t, int nodes = 32);

/// Gaver-Stehfest inversion with an even number of terms (real transform only).
double gaver_stehfest_invert(const RealFn& transform, double t, int terms = 14);

struct InversionResult {
  double value = 0.0;
  /// |f_32 - f_48| / |f_32|: relative disagreement between two node counts.
  double residual = 0.0;
};

/// Talbot at `nodes` and at 1.5 * nodes; the relative difference is the
/// residual estimate.
InversionResult talbot_invert_checked(const ComplexFn& transform, double t,
                                      int nodes = 32);

// ---------------------------------------------------------------------------
// Parallel execution
// ---------------------------------------------------------------------------

/// Worker count: `requested` if positive, else $SBM_THREADS, else the
/// hardware concurrency (at least 1).
unsigned resolve_thread_count(unsigned requested);

/// Runs body(i) for i in [0, n) on `threads` workers using a static,
/// contiguous partition.  The body must only write to index-owned storage.
void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body);

}  // namespace sbm
