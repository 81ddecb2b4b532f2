#include "sbm/ladder.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sbm/errors.hpp"

namespace sbm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfWidth = 40.0;
// Below this time the contour reaches |s| ~ 1e41 and phi(w^2) on the ray
// would overflow; v and V are continued by their local power law instead.
constexpr double kTinyTime = 1e-40;

const kind::Stable* stable_fast_path(const Cbf& phi, const LadderOptions& opts) {
  if (!opts.closed_form || opts.factor_exponent) return nullptr;
  return std::get_if<kind::Stable>(&phi.kind());
}

double factor_of(const Cbf& phi, const LadderOptions& opts) {
  return opts.factor_exponent.value_or(phi.index());
}

// log of ell(z) = phi(z) / z^{kappa/2} on the principal branch.
Complex log_ell(const Cbf& phi, double kappa, Complex z) {
  return phi.log_value(z) - 0.5 * kappa * std::log(z);
}

double checked_inverse(const ComplexFn& transform, double t, const LadderOptions& opts) {
  const auto res = talbot_invert_checked(transform, t, opts.inversion_nodes);
  if (!std::isfinite(res.value) || res.residual > opts.residual_tol) {
    throw NumericAccuracyError("ladder inversion residual above tolerance", res.residual);
  }
  return res.value;
}

}  // namespace

double ladder_exponent_chi(const Cbf& phi, double lambda, const LadderOptions& opts) {
  if (!(lambda > 0.0)) throw DomainError("ladder_exponent_chi: lambda must be positive");
  if (const auto* s = stable_fast_path(phi, opts)) return std::pow(lambda, 0.5 * s->alpha);
  const double kappa = factor_of(phi, opts);
  const int n = std::max(opts.real_nodes, 8);
  const double h = 2.0 * kHalfWidth / static_cast<double>(n - 1);
  const double l2 = lambda * lambda;
  std::vector<double> terms(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double y = -kHalfWidth + h * j;
    const double x = l2 * std::exp(2.0 * y);
    const double log_ell_x = std::log(phi(x)) - 0.5 * kappa * std::log(x);
    terms[static_cast<std::size_t>(j)] = log_ell_x / (2.0 * std::cosh(y));
  }
  const double integral = h * pairwise_sum(terms) / kPi;
  const double out = std::exp(0.5 * kappa * std::log(lambda) + integral);
  if (!std::isfinite(out)) throw NumericAccuracyError("chi quadrature overflowed", integral);
  return out;
}

Complex ladder_exponent_chi(const Cbf& phi, Complex lambda, const LadderOptions& opts) {
  if (lambda.imag() < 0.0) return std::conj(ladder_exponent_chi(phi, std::conj(lambda), opts));
  if (std::abs(lambda) == 0.0) throw DomainError("ladder_exponent_chi: lambda must be nonzero");
  if (lambda.imag() == 0.0 && lambda.real() < 0.0) {
    throw DomainError("ladder_exponent_chi: lambda on the branch cut");
  }
  if (const auto* s = stable_fast_path(phi, opts)) {
    return std::exp(0.5 * s->alpha * std::log(lambda));
  }
  const double kappa = factor_of(phi, opts);
  const double rho = std::abs(lambda);
  const double omega = std::arg(lambda);
  // The kernel lambda / (w^2 + lambda^2) has a pole at w = -i lambda, at
  // angle beta.  Above the real axis the ray passes over it; once beta >= 0
  // the ray passes below and the residue term restores continuity.
  const double beta = omega - 0.5 * kPi;
  const bool below = beta >= 0.0;
  const double psi = below ? 0.5 * beta - 0.25 * kPi : 0.5 * beta + 0.25 * kPi;
  const Complex dir = std::polar(1.0, psi);
  const int n = std::max(opts.complex_nodes, 8);
  const double h = 2.0 * kHalfWidth / static_cast<double>(n - 1);
  const Complex l2 = lambda * lambda;
  std::vector<double> re(static_cast<std::size_t>(n));
  std::vector<double> im(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double y = -kHalfWidth + h * j;
    const Complex w = dir * (rho * std::exp(y));
    const Complex w2 = w * w;
    const Complex term = log_ell(phi, kappa, w2) * lambda * w / (w2 + l2);
    re[static_cast<std::size_t>(j)] = term.real();
    im[static_cast<std::size_t>(j)] = term.imag();
  }
  Complex log_chi = 0.5 * kappa * std::log(lambda) +
                    Complex(pairwise_sum(re), pairwise_sum(im)) * (h / kPi);
  if (below) log_chi += log_ell(phi, kappa, -l2);
  return std::exp(log_chi);
}

RatioSpread chi_sandwich_check(const Cbf& phi, const std::vector<double>& lambda_grid,
                               const LadderOptions& opts) {
  std::vector<double> q;
  q.reserve(lambda_grid.size());
  for (double l : lambda_grid) {
    q.push_back(ladder_exponent_chi(phi, l, opts) / std::sqrt(phi(l * l)));
  }
  return spread_of(q);
}

MonotonicityReport chi_is_cbf_check(const RealFn& chi, const std::vector<double>& grid,
                                    int order) {
  return check_complete_monotonicity([&](double l) { return chi(l) / l; }, order, grid,
                                     MonotonicityClass::completely_monotone);
}

MonotonicityReport chi_is_cbf_check(const Cbf& phi, const std::vector<double>& grid, int order,
                                    const LadderOptions& opts) {
  return chi_is_cbf_check([&](double l) { return ladder_exponent_chi(phi, l, opts); }, grid,
                          order);
}

double ladder_potential_density(const Cbf& phi, double t, const LadderOptions& opts) {
  if (!(t > 0.0)) throw DomainError("ladder_potential_density: t must be positive");
  if (const auto* s = stable_fast_path(phi, opts)) {
    return std::pow(t, 0.5 * s->alpha - 1.0) / std::tgamma(0.5 * s->alpha);
  }
  if (t < kTinyTime) {
    const double kappa = factor_of(phi, opts);
    return ladder_potential_density(phi, kTinyTime, opts) *
           std::pow(t / kTinyTime, 0.5 * kappa - 1.0);
  }
  return checked_inverse(
      [&](Complex z) { return 1.0 / ladder_exponent_chi(phi, z, opts); }, t, opts);
}

double renewal_function_V(const Cbf& phi, double t, const LadderOptions& opts) {
  if (t < 0.0) throw DomainError("renewal_function_V: t must be nonnegative");
  if (t == 0.0) return 0.0;
  if (const auto* s = stable_fast_path(phi, opts)) {
    return std::pow(t, 0.5 * s->alpha) / std::tgamma(1.0 + 0.5 * s->alpha);
  }
  if (t < kTinyTime) {
    const double kappa = factor_of(phi, opts);
    return renewal_function_V(phi, kTinyTime, opts) * std::pow(t / kTinyTime, 0.5 * kappa);
  }
  return checked_inverse(
      [&](Complex z) { return 1.0 / (z * ladder_exponent_chi(phi, z, opts)); }, t, opts);
}

double halfline_green(const Cbf& phi, double x, double y, const LadderOptions& opts) {
  if (!(x > 0.0) || !(y > 0.0)) throw DomainError("halfline_green: x and y must be positive");
  auto v = [&](double z) { return ladder_potential_density(phi, z, opts); };
  if (x == y && phi.index() <= 1.0) return std::numeric_limits<double>::infinity();
  if (x <= y) {
    // int_0^x v(z) v(y + z - x) dz with z = x s^2
    return integrate_endpoint_singular(
               [&](double s) {
                 const double z = x * s * s;
                 if (!(z > 0.0)) return 0.0;
                 return v(z) * v(y - x + z) * 2.0 * x * s;
               },
               0.0, 1.0)
        .value;
  }
  // int_{x-y}^x v(z) v(y + z - x) dz with z = x - y + y s^2
  return integrate_endpoint_singular(
             [&](double s) {
               const double u = y * s * s;
               if (!(u > 0.0)) return 0.0;
               return v(x - y + u) * v(u) * 2.0 * y * s;
             },
             0.0, 1.0)
      .value;
}

IntervalGreenBounds interval_green_mass_bound(const Cbf& phi, double r, double x,
                                              const LadderOptions& opts) {
  if (!(r > 0.0)) throw DomainError("interval_green_mass_bound: r must be positive");
  if (!(std::abs(x) < r)) throw DomainError("interval_green_mass_bound: need |x| < r");
  auto V = [&](double t) { return renewal_function_V(phi, t, opts); };
  IntervalGreenBounds b;
  if (x > 0.0) {
    b.plain = 2.0 * V(x) * V(r);
    b.min_form = 2.0 * V(r) * std::min(V(x), V(r - x));
  }
  b.symmetric = 2.0 * V(2.0 * r) * std::min(V(r + x), V(r - x));
  return b;
}

RatioSpread renewal_asymptotic_ratio(const Cbf& phi, const std::vector<double>& t_grid,
                                     const LadderOptions& opts) {
  std::vector<double> q;
  q.reserve(t_grid.size());
  for (double t : t_grid) {
    q.push_back(renewal_function_V(phi, t, opts) * std::sqrt(phi(1.0 / (t * t))));
  }
  return spread_of(q);
}

LadderObjects make_ladder_objects(const Cbf& phi, const LadderOptions& opts) {
  LadderObjects lo{phi, {}, {}, {}};
  lo.chi = [phi, opts](double l) { return ladder_exponent_chi(phi, l, opts); };
  lo.ladder_density = [phi, opts](double t) { return ladder_potential_density(phi, t, opts); };
  lo.renewal = [phi, opts](double t) { return renewal_function_V(phi, t, opts); };
  return lo;
}

}  // namespace sbm
