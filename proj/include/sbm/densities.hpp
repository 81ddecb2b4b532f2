#pragma once

#include <vector>

#include "sbm/bernstein.hpp"
#include "sbm/numeric.hpp"

namespace sbm {

enum class InversionMode {
  /// Closed form where the catalog has one, Talbot otherwise.
  closed_form,
  talbot_contour,
  gaver_stehfest,
};

/// Potential density u = L^{-1}[1/phi] and friends for one exponent.
struct DensityEvaluator {
  Cbf phi;
  int inversion_nodes = 32;
  InversionMode mode = InversionMode::closed_form;
  /// Largest accepted |f_n - f_{1.5n}| / |f_n| for contour inversion.  An
  /// infinite value skips the second resolution entirely.
  double residual_tol = 1e-6;
};

/// u(t), t > 0.  Throws NumericAccuracyError (carrying the residual) when
/// the two contour resolutions disagree by more than ev.residual_tol.
double potential_density_u(const DensityEvaluator& ev, double t);

/// True when u has a closed form for this kind.
bool has_closed_form_u(const Cbf& phi);

/// (1 - e^{-1})^{-1}
inline double zahle_constant() { return 1.0 / (1.0 - std::exp(-1.0)); }

/// max over the grid of u(t) t phi(1/t).
double zahle_upper_check(const DensityEvaluator& ev, const std::vector<double>& t_grid);

struct ScalingWitness {
  double delta = 0.5;
  double a_const = 1.0;
  double s0 = 1.0;
};

/// phi(l t) >= a l^delta phi(t) for every grid pair with l >= 1, t >= 1/s0.
bool verify_scaling_condition(const Cbf& phi, const ScalingWitness& w,
                              const std::vector<double>& lambda_grid,
                              const std::vector<double>& t_grid);

/// Largest a that makes verify_scaling_condition true on the given grids.
double best_scaling_constant(const Cbf& phi, double delta, double s0,
                             const std::vector<double>& lambda_grid,
                             const std::vector<double>& t_grid);

/// min / max of u(t) t phi(1/t).
RatioSpread u_asymptotic_ratio(const DensityEvaluator& ev, const std::vector<double>& t_grid);

/// min / max of mu(t) t / phi(1/t).
RatioSpread mu_asymptotic_ratio(const Cbf& phi, const std::vector<double>& t_grid);

/// Largest relative difference between mu(t, inf) and the contour inverse
/// of phi(l)/l over the grid.
double tail_vs_conjugate_potential(const Cbf& phi, const std::vector<double>& t_grid,
                                   int nodes = 32);

}  // namespace sbm
