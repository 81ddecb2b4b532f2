#include "sbm/densities.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sbm/errors.hpp"

namespace sbm {

namespace {

std::optional<double> closed_form_u(const Cbf& phi, double t) {
  if (const auto* s = std::get_if<kind::Stable>(&phi.kind())) {
    return std::pow(t, s->alpha / 2.0 - 1.0) / std::tgamma(s->alpha / 2.0);
  }
  if (const auto* r = std::get_if<kind::RelativisticStable>(&phi.kind()); r && r->m == 0.0) {
    return std::pow(t, r->alpha / 2.0 - 1.0) / std::tgamma(r->alpha / 2.0);
  }
  if (const auto* g = std::get_if<kind::GeometricLikeExample>(&phi.kind())) {
    // 1/phi = g_N = sum 2^n / (l + c_n)
    double acc = 0.0;
    for (int n = 1; n <= g->terms; ++n) {
      acc += std::ldexp(1.0, n) * std::exp(-std::exp2(2.0 * n / g->alpha) * t);
    }
    return acc;
  }
  return std::nullopt;
}

double contour_inverse(const ComplexFn& transform, double t, int nodes, double tol) {
  if (!std::isfinite(tol)) return talbot_invert(transform, t, nodes);
  const auto res = talbot_invert_checked(transform, t, nodes);
  if (!std::isfinite(res.value) || res.residual > tol) {
    throw NumericAccuracyError("Laplace inversion residual above tolerance", res.residual);
  }
  return res.value;
}

}  // namespace

bool has_closed_form_u(const Cbf& phi) { return closed_form_u(phi, 1.0).has_value(); }

double potential_density_u(const DensityEvaluator& ev, double t) {
  if (!(t > 0.0)) throw DomainError("potential_density_u: t must be positive");
  if (ev.mode == InversionMode::closed_form) {
    if (auto v = closed_form_u(ev.phi, t)) return *v;
  }
  if (ev.mode == InversionMode::gaver_stehfest) {
    return gaver_stehfest_invert([&](double l) { return 1.0 / ev.phi(l); }, t);
  }
  return contour_inverse([&](Complex s) { return 1.0 / ev.phi(s); }, t, ev.inversion_nodes,
                         ev.residual_tol);
}

double zahle_upper_check(const DensityEvaluator& ev, const std::vector<double>& t_grid) {
  double worst = 0.0;
  for (double t : t_grid) {
    worst = std::max(worst, potential_density_u(ev, t) * t * ev.phi(1.0 / t));
  }
  return worst;
}

double best_scaling_constant(const Cbf& phi, double delta, double s0,
                             const std::vector<double>& lambda_grid,
                             const std::vector<double>& t_grid) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("scaling witness: delta in (0, 1)");
  double a = std::numeric_limits<double>::infinity();
  for (double l : lambda_grid) {
    if (l < 1.0) continue;
    for (double t : t_grid) {
      if (t < 1.0 / s0) continue;
      a = std::min(a, phi(l * t) / (std::pow(l, delta) * phi(t)));
    }
  }
  return a;
}

bool verify_scaling_condition(const Cbf& phi, const ScalingWitness& w,
                              const std::vector<double>& lambda_grid,
                              const std::vector<double>& t_grid) {
  return best_scaling_constant(phi, w.delta, w.s0, lambda_grid, t_grid) >= w.a_const;
}

RatioSpread u_asymptotic_ratio(const DensityEvaluator& ev, const std::vector<double>& t_grid) {
  std::vector<double> q;
  q.reserve(t_grid.size());
  for (double t : t_grid) q.push_back(potential_density_u(ev, t) * t * ev.phi(1.0 / t));
  return spread_of(q);
}

RatioSpread mu_asymptotic_ratio(const Cbf& phi, const std::vector<double>& t_grid) {
  std::vector<double> q;
  q.reserve(t_grid.size());
  for (double t : t_grid) q.push_back(eval_levy_density(phi, t) * t / phi(1.0 / t));
  return spread_of(q);
}

double tail_vs_conjugate_potential(const Cbf& phi, const std::vector<double>& t_grid,
                                   int nodes) {
  double worst = 0.0;
  for (double t : t_grid) {
    const double tail = levy_tail(phi, t);
    const double inv = talbot_invert([&](Complex s) { return phi(s) / s; }, t, nodes);
    worst = std::max(worst, std::abs(tail - inv) / std::abs(tail));
  }
  return worst;
}

}  // namespace sbm
