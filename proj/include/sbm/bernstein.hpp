#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "sbm/numeric.hpp"

namespace sbm {

class CompleteBernsteinFunction;

/// mu(t) = sum_k weights[k] * exp(-rates[k] t), a discrete Bernstein measure.
struct ExponentialMixture {
  std::vector<double> rates;
  std::vector<double> weights;
};

namespace kind {

/// phi(l) = l^{alpha/2}
struct Stable {
  double alpha;
};
/// phi(l) = (l + m^{2/alpha})^{alpha/2} - m
struct RelativisticStable {
  double alpha;
  double m;
};
/// phi(l) = l^{alpha/2} + l^{beta/2}, 0 <= beta < alpha
struct SumOfStables {
  double alpha;
  double beta;
};
/// phi(l) = l^{alpha/2} log(1+l)^{gamma/2}, 0 < gamma < 2 - alpha
struct LogPerturbedUp {
  double alpha;
  double gamma;
};
/// phi(l) = l^{alpha/2} log(1+l)^{-beta/2}, 0 <= beta < alpha
struct LogPerturbedDown {
  double alpha;
  double beta;
};
/// phi = 1/g_N with g_N(l) = sum_{n=1}^{N} 2^n / (l + 2^{2n/alpha}).
/// The untruncated function is comparable to l^{1-alpha/2} at infinity but
/// is not regularly varying, and g(0) < infinity makes it a killed CBF.
struct GeometricLikeExample {
  double alpha;
  int terms;
};
/// psi(l) = l / phi(l)
struct ConjugateOf {
  std::shared_ptr<const CompleteBernsteinFunction> inner;
};
/// a + phi(l)
struct KilledShift {
  std::shared_ptr<const CompleteBernsteinFunction> inner;
  double rate;
};

}  // namespace kind

/// A complete Bernstein function from the closed-form catalog: the Laplace
/// exponent of a (possibly killed) driftless subordinator.
///
/// Immutable after construction; copies share the nested operands of
/// ConjugateOf / KilledShift.  All members are safe to call concurrently.
class CompleteBernsteinFunction {
 public:
  using Kind = std::variant<kind::Stable, kind::RelativisticStable, kind::SumOfStables,
                            kind::LogPerturbedUp, kind::LogPerturbedDown,
                            kind::GeometricLikeExample, kind::ConjugateOf,
                            kind::KilledShift>;

  static CompleteBernsteinFunction stable(double alpha);
  static CompleteBernsteinFunction relativistic(double alpha, double m);
  static CompleteBernsteinFunction sum_of_stables(double alpha, double beta);
  static CompleteBernsteinFunction log_up(double alpha, double gamma);
  static CompleteBernsteinFunction log_down(double alpha, double beta);
  /// terms <= 0 selects the default truncation for this alpha.
  static CompleteBernsteinFunction geometric_example(double alpha, int terms = 0);
  static CompleteBernsteinFunction killed_shift(const CompleteBernsteinFunction& inner,
                                                double rate);

  /// Constructs from a catalog kind.  Rejects parameters outside the catalog
  /// ranges and any drift other than 0 (ConfigError).
  explicit CompleteBernsteinFunction(Kind k, double drift = 0.0);

  const Kind& kind() const { return kind_; }

  double operator()(double lambda) const;
  Complex operator()(Complex lambda) const;
  double derivative(double lambda) const;
  Complex derivative(Complex lambda) const;

  /// log phi(z) on the slit plane, with the branch that is real on (0, inf).
  Complex log_value(Complex z) const;

  /// Index alpha of phi(l) ~ l^{alpha/2} ell(l) at infinity.
  double index() const { return index_; }
  double killing() const { return killing_; }
  double drift() const { return 0.0; }
  /// gamma0 with phi(l) ~ c l^{gamma0} as l -> 0 (0 for killed functions).
  std::optional<double> small_lambda_exponent() const { return small_exponent_; }

  /// Short human readable name, e.g. "stable(alpha=1)".
  std::string name() const;
  nlohmann::json to_json() const;

  /// Discrete Bernstein measure of mu when one is known exactly (the
  /// truncated geometric example), else nullptr.
  const ExponentialMixture* levy_mixture() const { return mixture_.get(); }

 private:
  Kind kind_;
  double index_ = 1.0;
  double killing_ = 0.0;
  std::optional<double> small_exponent_;
  std::shared_ptr<const ExponentialMixture> mixture_;
};

using Cbf = CompleteBernsteinFunction;

/// Parses {"kind":"stable","alpha":0.5} and friends.  Throws ConfigError.
Cbf cbf_from_json(const nlohmann::json& j);
Cbf cbf_from_json_text(const std::string& text);

/// The standard catalog used by the property and acceptance suites.
std::vector<Cbf> standard_catalog();

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// phi(lambda) for lambda > 0.  Throws DomainError on non-positive input or
/// a non-finite result.
double eval_phi(const Cbf& phi, double lambda);

/// psi(l) = l / phi(l).  Requires zero drift and infinite Levy mass.  The
/// killing of psi, 1 / int t mu(t) dt, is recorded in psi.killing().
Cbf conjugate(const Cbf& phi);

/// Which representations of the Levy density mu are available.
struct LevyDensitySpec {
  bool closed_form = false;
  /// mu(t) = int e^{-tx} m(dx) with m known explicitly (see levy_mixture()).
  bool bernstein_measure = false;
  /// t mu(t) recovered as the inverse Laplace transform of phi'.
  bool derivative_inversion = false;
  bool closed_form_tail = false;
};

LevyDensitySpec levy_density_spec(const Cbf& phi);

/// mu(t), t > 0.
double eval_levy_density(const Cbf& phi, double t);

/// mu(t, infinity).
double levy_tail(const Cbf& phi, double t);

/// max over the grid of mu(t) / mu(t + 1); grid must lie in (1, inf).
double check_levy_shift_bound(const Cbf& phi, const std::vector<double>& t_grid);

struct RegVarProfile {
  double alpha = 1.0;
  /// ell(l) = phi(l) / l^{alpha/2}
  RealFn ell;
  /// Smallest c with c^-1 <= phi / (l^{alpha/2} ell_ref) <= c on [1, 1e8].
  double c_h = 1.0;
};

/// Canonical profile; when `ell_ref` is supplied, c_h is measured against it
/// on a 200 point log grid of [1, 1e8].
RegVarProfile reg_var_profile(const Cbf& phi,
                              const std::optional<RealFn>& ell_ref = std::nullopt);

enum class MonotonicityClass {
  /// (-1)^n f^(n) >= 0 for n = 0..order
  completely_monotone,
  /// f >= 0 and (-1)^(n+1) f^(n) >= 0 for n = 1..order
  bernstein,
};

enum class CheckVerdict { pass, fail, inconclusive };

std::string to_string(CheckVerdict v);

struct MonotonicityReport {
  CheckVerdict verdict = CheckVerdict::pass;
  std::size_t points_checked = 0;
  std::size_t inconclusive_points = 0;
  /// First (x, order) where a sign violation was found.
  std::optional<std::pair<double, int>> first_failure;
};

/// Sign pattern of finite differences (relative step 1e-2, one Richardson
/// step) up to `order` <= 4 at each grid point.  Differences swamped by
/// rounding are counted as inconclusive rather than failing.
MonotonicityReport check_complete_monotonicity(const RealFn& f, int order,
                                               const std::vector<double>& grid,
                                               MonotonicityClass cls =
                                                   MonotonicityClass::completely_monotone);

}  // namespace sbm
