#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "sbm/bernstein.hpp"
#include "sbm/numeric.hpp"

namespace sbm {

struct LadderOptions {
  /// Use the Gamma-function closed forms for Stable kinds.
  bool closed_form = true;
  /// Power l^{kappa/2} pulled out of chi before quadrature; defaults to
  /// phi.index().  Any value gives the same chi up to quadrature error.
  std::optional<double> factor_exponent;
  /// Trapezoid nodes on y in [-40, 40] for real and complex arguments.
  int real_nodes = 256;
  int complex_nodes = 512;
  /// Talbot nodes and accepted 32/48 residual for v and V.
  int inversion_nodes = 32;
  double residual_tol = 1e-6;
};

/// Ladder height exponent
///   chi(l) = exp((1/pi) int_0^inf log phi(l^2 th^2) / (1 + th^2) dth),
/// evaluated with th = e^y and the power l^{kappa/2} factored out.
double ladder_exponent_chi(const Cbf& phi, double lambda, const LadderOptions& opts = {});

/// Analytic continuation of chi to the slit plane.  Poisson integral along a
/// rotated ray that keeps clear of the kernel pole at w = -i lambda.
Complex ladder_exponent_chi(const Cbf& phi, Complex lambda, const LadderOptions& opts = {});

/// min / max of chi(l) / sqrt(phi(l^2)) over the grid.
RatioSpread chi_sandwich_check(const Cbf& phi, const std::vector<double>& lambda_grid,
                               const LadderOptions& opts = {});

/// exp(-pi/2) and exp(pi/2)
inline double sandwich_lower() { return std::exp(-0.5 * std::numbers::pi); }
inline double sandwich_upper() { return std::exp(0.5 * std::numbers::pi); }

/// Complete monotonicity of l -> chi(l)/l (a Stieltjes function when chi is
/// a complete Bernstein function).
MonotonicityReport chi_is_cbf_check(const Cbf& phi, const std::vector<double>& grid,
                                    int order = 3, const LadderOptions& opts = {});
/// Same test for an arbitrary candidate chi.
MonotonicityReport chi_is_cbf_check(const RealFn& chi, const std::vector<double>& grid,
                                    int order = 3);

/// Ladder potential density v = L^{-1}[1/chi].
double ladder_potential_density(const Cbf& phi, double t, const LadderOptions& opts = {});

/// Renewal function V(t) = int_0^t v = L^{-1}[1/(l chi(l))](t); V(0) = 0.
double renewal_function_V(const Cbf& phi, double t, const LadderOptions& opts = {});

/// Green function of the half-line (0, inf).  Returns +infinity on the
/// diagonal when the convolution diverges (index <= 1).
double halfline_green(const Cbf& phi, double x, double y, const LadderOptions& opts = {});

struct IntervalGreenBounds {
  /// 2 V(x) V(r)
  double plain = 0.0;
  /// 2 V(r) (V(x) ^ V(r - x))
  double min_form = 0.0;
  /// 2 V(2r) (V(r + x) ^ V(r - x)), for the symmetric interval (-r, r)
  double symmetric = 0.0;
};

/// Upper bounds on int_0^r G_{(0,r)}(x, y) dy, x in (0, r).  The symmetric
/// form bounds E_x[tau] for the interval (-r, r) and accepts x in (-r, r).
IntervalGreenBounds interval_green_mass_bound(const Cbf& phi, double r, double x,
                                              const LadderOptions& opts = {});

/// min / max of V(t) phi(t^-2)^{1/2}.
RatioSpread renewal_asymptotic_ratio(const Cbf& phi, const std::vector<double>& t_grid,
                                     const LadderOptions& opts = {});

/// Bundle of ladder evaluators bound to one exponent.
struct LadderObjects {
  Cbf phi;
  RealFn chi;
  RealFn ladder_density;
  RealFn renewal;
};

LadderObjects make_ladder_objects(const Cbf& phi, const LadderOptions& opts = {});

}  // namespace sbm
