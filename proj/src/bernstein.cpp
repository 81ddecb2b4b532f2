#include "sbm/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "sbm/errors.hpp"

namespace sbm {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// log1p / expm1 that also work on the slit plane.
double log1p_t(double z) { return std::log1p(z); }
Complex log1p_t(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    return z - z2 / 2.0 + z2 * z / 3.0 - z2 * z2 / 4.0;
  }
  return std::log(1.0 + z);
}
double expm1_t(double z) { return std::expm1(z); }
Complex expm1_t(Complex z) {
  if (std::abs(z) < 1e-4) {
    const Complex z2 = z * z;
    return z + z2 / 2.0 + z2 * z / 6.0 + z2 * z2 / 24.0;
  }
  return std::exp(z) - 1.0;
}

// z^p on the principal branch; 0^p = 0 for p > 0.
template <class T>
T power(T z, double p) {
  if (z == T(0.0)) return p == 0.0 ? T(1.0) : T(0.0);
  if constexpr (std::is_same_v<T, double>) {
    return std::pow(z, p);
  } else {
    return std::exp(p * std::log(z));
  }
}

double geometric_weight(int n) { return std::ldexp(1.0, n); }
double geometric_pole(int n, double alpha) {
  return std::exp2(2.0 * static_cast<double>(n) / alpha);
}

template <class T>
T geometric_g(const kind::GeometricLikeExample& k, T z) {
  T g(0.0);
  for (int n = 1; n <= k.terms; ++n) {
    g += geometric_weight(n) / (z + geometric_pole(n, k.alpha));
  }
  return g;
}

template <class T>
T geometric_g_prime(const kind::GeometricLikeExample& k, T z) {
  T g(0.0);
  for (int n = 1; n <= k.terms; ++n) {
    const T d = z + geometric_pole(n, k.alpha);
    g -= geometric_weight(n) / (d * d);
  }
  return g;
}

template <class T>
T evaluate(const Cbf::Kind& kind, T z);
template <class T>
T evaluate_derivative(const Cbf::Kind& kind, T z);

template <class T>
T evaluate(const Cbf::Kind& kind, T z) {
  return std::visit(
      [&](const auto& k) -> T {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Stable>) {
          return power(z, k.alpha / 2.0);
        } else if constexpr (std::is_same_v<K, kind::RelativisticStable>) {
          if (k.m == 0.0) return power(z, k.alpha / 2.0);
          const double c = std::pow(k.m, 2.0 / k.alpha);
          return k.m * expm1_t((k.alpha / 2.0) * log1p_t(z / c));
        } else if constexpr (std::is_same_v<K, kind::SumOfStables>) {
          return power(z, k.alpha / 2.0) + power(z, k.beta / 2.0);
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedUp>) {
          return power(z, k.alpha / 2.0) * power(log1p_t(z), k.gamma / 2.0);
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedDown>) {
          return power(z, k.alpha / 2.0) * power(log1p_t(z), -k.beta / 2.0);
        } else if constexpr (std::is_same_v<K, kind::GeometricLikeExample>) {
          return T(1.0) / geometric_g(k, z);
        } else if constexpr (std::is_same_v<K, kind::ConjugateOf>) {
          return z / evaluate(k.inner->kind(), z);
        } else {
          return k.rate + evaluate(k.inner->kind(), z);
        }
      },
      kind);
}

template <class T>
T evaluate_derivative(const Cbf::Kind& kind, T z) {
  return std::visit(
      [&](const auto& k) -> T {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Stable>) {
          return (k.alpha / 2.0) * power(z, k.alpha / 2.0 - 1.0);
        } else if constexpr (std::is_same_v<K, kind::RelativisticStable>) {
          const double c = std::pow(k.m, 2.0 / k.alpha);
          return (k.alpha / 2.0) * power(z + c, k.alpha / 2.0 - 1.0);
        } else if constexpr (std::is_same_v<K, kind::SumOfStables>) {
          T d = (k.alpha / 2.0) * power(z, k.alpha / 2.0 - 1.0);
          if (k.beta > 0.0) d += (k.beta / 2.0) * power(z, k.beta / 2.0 - 1.0);
          return d;
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedUp>) {
          const double a = k.alpha / 2.0;
          const double g = k.gamma / 2.0;
          const T lg = log1p_t(z);
          return a * power(z, a - 1.0) * power(lg, g) +
                 power(z, a) * g * power(lg, g - 1.0) / (1.0 + z);
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedDown>) {
          const double a = k.alpha / 2.0;
          const double b = k.beta / 2.0;
          const T lg = log1p_t(z);
          return a * power(z, a - 1.0) * power(lg, -b) -
                 power(z, a) * b * power(lg, -b - 1.0) / (1.0 + z);
        } else if constexpr (std::is_same_v<K, kind::GeometricLikeExample>) {
          const T g = geometric_g(k, z);
          return -geometric_g_prime(k, z) / (g * g);
        } else if constexpr (std::is_same_v<K, kind::ConjugateOf>) {
          const T f = evaluate(k.inner->kind(), z);
          const T fp = evaluate_derivative(k.inner->kind(), z);
          return (f - z * fp) / (f * f);
        } else {
          return evaluate_derivative(k.inner->kind(), z);
        }
      },
      kind);
}

void require(bool ok, const std::string& what) {
  if (!ok) throw ConfigError(what);
}

int default_geometric_terms(double alpha) {
  // Dropped remainder sum_{n>N} 2^n / 2^{2n/alpha} below 1e-8 * g_N(1).
  const double ratio = std::exp2(1.0 - 2.0 / alpha);
  const int cap = static_cast<int>(std::floor(500.0 * alpha));
  int n = 1;
  for (; n < cap; ++n) {
    const double g1 = geometric_g(kind::GeometricLikeExample{alpha, n}, 1.0);
    const double remainder = std::pow(ratio, n + 1) / (1.0 - ratio);
    if (remainder < 1e-8 * g1) break;
  }
  // Push the largest pole far past every evaluation point used downstream.
  return std::min(std::max(n, 64), cap);
}

// Truncated geometric example: f = 1/g_N is rational with simple poles at
// the zeros -z_k of g_N, one in each gap (-c_{k+1}, -c_k), so that
// mu(t) = sum_k e^{-z_k t} / |g_N'(-z_k)|.
std::shared_ptr<const ExponentialMixture> geometric_mixture(const kind::GeometricLikeExample& k) {
  auto mix = std::make_shared<ExponentialMixture>();
  for (int n = 1; n < k.terms; ++n) {
    double lo = std::log(geometric_pole(n, k.alpha));
    double hi = std::log(geometric_pole(n + 1, k.alpha));
    for (int it = 0; it < 200 && hi - lo > 4.0 * kEps * std::abs(hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      // g_N(-u) increases from -inf to +inf as u crosses the gap.
      if (geometric_g(k, -std::exp(mid)) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double z = std::exp(0.5 * (lo + hi));
    mix->rates.push_back(z);
    mix->weights.push_back(-1.0 / geometric_g_prime(k, -z));
  }
  return mix;
}

double power_law_levy_density(double alpha, double t) {
  return (alpha / 2.0) / std::tgamma(1.0 - alpha / 2.0) * std::pow(t, -1.0 - alpha / 2.0);
}

double power_law_levy_tail(double alpha, double t) {
  return std::pow(t, -alpha / 2.0) / std::tgamma(1.0 - alpha / 2.0);
}

}  // namespace

// ---------------------------------------------------------------------------

Cbf::CompleteBernsteinFunction(Kind k, double drift) : kind_(std::move(k)) {
  require(drift == 0.0, "complete Bernstein functions here are driftless (b = 0)");
  auto in_open = [](double a, double lo, double hi) { return a > lo && a < hi; };
  std::visit(
      [&](auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Stable>) {
          require(in_open(k.alpha, 0.0, 2.0), "stable: alpha must lie in (0, 2)");
          index_ = k.alpha;
          small_exponent_ = k.alpha / 2.0;
        } else if constexpr (std::is_same_v<K, kind::RelativisticStable>) {
          require(in_open(k.alpha, 0.0, 2.0), "relativistic: alpha must lie in (0, 2)");
          require(k.m >= 0.0 && std::isfinite(k.m), "relativistic: m must be >= 0");
          index_ = k.alpha;
          small_exponent_ = k.m > 0.0 ? 1.0 : k.alpha / 2.0;
        } else if constexpr (std::is_same_v<K, kind::SumOfStables>) {
          require(in_open(k.alpha, 0.0, 2.0), "sum: alpha must lie in (0, 2)");
          require(k.beta >= 0.0 && k.beta < k.alpha, "sum: need 0 <= beta < alpha");
          index_ = k.alpha;
          small_exponent_ = k.beta / 2.0;
          killing_ = k.beta == 0.0 ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedUp>) {
          require(in_open(k.alpha, 0.0, 2.0), "log_up: alpha must lie in (0, 2)");
          require(in_open(k.gamma, 0.0, 2.0 - k.alpha), "log_up: need 0 < gamma < 2 - alpha");
          index_ = k.alpha;
          small_exponent_ = (k.alpha + k.gamma) / 2.0;
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedDown>) {
          require(in_open(k.alpha, 0.0, 2.0), "log_down: alpha must lie in (0, 2)");
          require(k.beta >= 0.0 && k.beta < k.alpha, "log_down: need 0 <= beta < alpha");
          index_ = k.alpha;
          small_exponent_ = (k.alpha - k.beta) / 2.0;
        } else if constexpr (std::is_same_v<K, kind::GeometricLikeExample>) {
          require(in_open(k.alpha, 0.0, 2.0), "geometric_example: alpha must lie in (0, 2)");
          if (k.terms <= 0) k.terms = default_geometric_terms(k.alpha);
          require(2.0 * k.terms / k.alpha < 1000.0,
                  "geometric_example: truncation too large for double precision");
          index_ = 2.0 - k.alpha;
          small_exponent_ = 0.0;
          killing_ = 1.0 / geometric_g(k, 0.0);
          mixture_ = geometric_mixture(k);
        } else if constexpr (std::is_same_v<K, kind::ConjugateOf>) {
          require(k.inner != nullptr, "conjugate: missing inner function");
          index_ = 2.0 - k.inner->index();
          const auto g0 = k.inner->small_lambda_exponent();
          if (g0) small_exponent_ = 1.0 - *g0;
          // psi(0+) = 1 / phi'(0+) when the inner mean jump size is finite.
          if (g0 && *g0 >= 1.0 && k.inner->killing() == 0.0) {
            killing_ = 1.0 / evaluate_derivative(k.inner->kind(), 1e-300);
          }
        } else {
          require(k.inner != nullptr, "killed: missing inner function");
          require(k.rate >= 0.0 && std::isfinite(k.rate), "killed: rate must be >= 0");
          index_ = k.inner->index();
          small_exponent_ = k.rate > 0.0 ? std::optional<double>(0.0)
                                         : k.inner->small_lambda_exponent();
          killing_ = k.rate + k.inner->killing();
        }
      },
      kind_);
}

Cbf Cbf::stable(double alpha) { return Cbf(kind::Stable{alpha}); }
Cbf Cbf::relativistic(double alpha, double m) {
  return Cbf(kind::RelativisticStable{alpha, m});
}
Cbf Cbf::sum_of_stables(double alpha, double beta) {
  return Cbf(kind::SumOfStables{alpha, beta});
}
Cbf Cbf::log_up(double alpha, double gamma) { return Cbf(kind::LogPerturbedUp{alpha, gamma}); }
Cbf Cbf::log_down(double alpha, double beta) {
  return Cbf(kind::LogPerturbedDown{alpha, beta});
}
Cbf Cbf::geometric_example(double alpha, int terms) {
  return Cbf(kind::GeometricLikeExample{alpha, terms});
}
Cbf Cbf::killed_shift(const Cbf& inner, double rate) {
  return Cbf(kind::KilledShift{std::make_shared<const Cbf>(inner), rate});
}

double Cbf::operator()(double lambda) const { return evaluate(kind_, lambda); }
Complex Cbf::operator()(Complex lambda) const { return evaluate(kind_, lambda); }
double Cbf::derivative(double lambda) const { return evaluate_derivative(kind_, lambda); }
Complex Cbf::derivative(Complex lambda) const { return evaluate_derivative(kind_, lambda); }

Complex Cbf::log_value(Complex z) const {
  if (const auto* s = std::get_if<kind::Stable>(&kind_)) {
    return (s->alpha / 2.0) * std::log(z);
  }
  return std::log(evaluate(kind_, z));
}

std::string Cbf::name() const {
  std::ostringstream os;
  os.precision(6);
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Stable>) {
          os << "stable(alpha=" << k.alpha << ")";
        } else if constexpr (std::is_same_v<K, kind::RelativisticStable>) {
          os << "relativistic(alpha=" << k.alpha << ",m=" << k.m << ")";
        } else if constexpr (std::is_same_v<K, kind::SumOfStables>) {
          os << "sum(alpha=" << k.alpha << ",beta=" << k.beta << ")";
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedUp>) {
          os << "log_up(alpha=" << k.alpha << ",gamma=" << k.gamma << ")";
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedDown>) {
          os << "log_down(alpha=" << k.alpha << ",beta=" << k.beta << ")";
        } else if constexpr (std::is_same_v<K, kind::GeometricLikeExample>) {
          os << "geometric_example(alpha=" << k.alpha << ",n=" << k.terms << ")";
        } else if constexpr (std::is_same_v<K, kind::ConjugateOf>) {
          os << "conjugate(" << k.inner->name() << ")";
        } else {
          os << "killed(" << k.inner->name() << ",a=" << k.rate << ")";
        }
      },
      kind_);
  return os.str();
}

nlohmann::json Cbf::to_json() const {
  return std::visit(
      [](const auto& k) -> nlohmann::json {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Stable>) {
          return {{"kind", "stable"}, {"alpha", k.alpha}};
        } else if constexpr (std::is_same_v<K, kind::RelativisticStable>) {
          return {{"kind", "relativistic"}, {"alpha", k.alpha}, {"m", k.m}};
        } else if constexpr (std::is_same_v<K, kind::SumOfStables>) {
          return {{"kind", "sum"}, {"alpha", k.alpha}, {"beta", k.beta}};
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedUp>) {
          return {{"kind", "log_up"}, {"alpha", k.alpha}, {"gamma", k.gamma}};
        } else if constexpr (std::is_same_v<K, kind::LogPerturbedDown>) {
          return {{"kind", "log_down"}, {"alpha", k.alpha}, {"beta", k.beta}};
        } else if constexpr (std::is_same_v<K, kind::GeometricLikeExample>) {
          return {{"kind", "geometric_example"}, {"alpha", k.alpha}, {"n", k.terms}};
        } else if constexpr (std::is_same_v<K, kind::ConjugateOf>) {
          return {{"kind", "conjugate"}, {"inner", k.inner->to_json()}};
        } else {
          return {{"kind", "killed"}, {"inner", k.inner->to_json()}, {"a", k.rate}};
        }
      },
      kind_);
}

Cbf cbf_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string()) {
    throw ConfigError("catalog entry must be an object with a string \"kind\"");
  }
  auto num = [&](const char* key) -> double {
    if (!j.contains(key) || !j[key].is_number()) {
      throw ConfigError(std::string("catalog entry is missing numeric field \"") + key + "\"");
    }
    return j[key].get<double>();
  };
  const std::string k = j["kind"].get<std::string>();
  if (k == "stable") return Cbf::stable(num("alpha"));
  if (k == "relativistic") return Cbf::relativistic(num("alpha"), num("m"));
  if (k == "sum") return Cbf::sum_of_stables(num("alpha"), num("beta"));
  if (k == "log_up") return Cbf::log_up(num("alpha"), num("gamma"));
  if (k == "log_down") return Cbf::log_down(num("alpha"), num("beta"));
  if (k == "geometric_example") {
    const int n = j.contains("n") ? static_cast<int>(num("n")) : 0;
    return Cbf::geometric_example(num("alpha"), n);
  }
  if (k == "conjugate") {
    if (!j.contains("inner")) throw ConfigError("conjugate entry needs \"inner\"");
    return conjugate(cbf_from_json(j["inner"]));
  }
  if (k == "killed") {
    if (!j.contains("inner")) throw ConfigError("killed entry needs \"inner\"");
    return Cbf::killed_shift(cbf_from_json(j["inner"]), num("a"));
  }
  throw ConfigError("unknown catalog kind \"" + k + "\"");
}

Cbf cbf_from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("malformed catalog JSON: ") + e.what());
  }
  return cbf_from_json(j);
}

std::vector<Cbf> standard_catalog() {
  return {
      Cbf::stable(0.5),          Cbf::stable(1.0),           Cbf::stable(1.5),
      Cbf::relativistic(1.0, 1.0), Cbf::relativistic(1.5, 1.0), Cbf::sum_of_stables(1.0, 0.5),
      Cbf::log_up(1.0, 0.5),     Cbf::log_down(1.0, 0.5),    Cbf::geometric_example(1.0),
  };
}

// ---------------------------------------------------------------------------

double eval_phi(const Cbf& phi, double lambda) {
  if (!(lambda > 0.0)) throw DomainError("eval_phi: lambda must be positive");
  const double v = phi(lambda);
  if (!std::isfinite(v)) throw DomainError("eval_phi: non-finite value at lambda");
  return v;
}

Cbf conjugate(const Cbf& phi) {
  if (phi.drift() != 0.0) throw DomainError("conjugate: phi must be driftless");
  if (phi.killing() > 0.0 && std::holds_alternative<kind::KilledShift>(phi.kind())) {
    // a + phi with finite mass is still fine; only finite total mass is excluded.
  }
  return Cbf(kind::ConjugateOf{std::make_shared<const Cbf>(phi)});
}

LevyDensitySpec levy_density_spec(const Cbf& phi) {
  return std::visit(
      [](const auto& k) -> LevyDensitySpec {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Stable> || std::is_same_v<K, kind::SumOfStables>) {
          return {true, false, true, true};
        } else if constexpr (std::is_same_v<K, kind::RelativisticStable>) {
          return {true, false, true, k.m == 0.0};
        } else if constexpr (std::is_same_v<K, kind::GeometricLikeExample>) {
          return {false, true, true, true};
        } else if constexpr (std::is_same_v<K, kind::KilledShift>) {
          return levy_density_spec(*k.inner);
        } else {
          return {false, false, true, false};
        }
      },
      phi.kind());
}

double eval_levy_density(const Cbf& phi, double t) {
  if (!(t > 0.0)) throw DomainError("eval_levy_density: t must be positive");
  const double v = std::visit(
      [&](const auto& k) -> double {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, kind::Stable>) {
          return power_law_levy_density(k.alpha, t);
        } else if constexpr (std::is_same_v<K, kind::RelativisticStable>) {
          const double c = std::pow(k.m, 2.0 / k.alpha);
          return power_law_levy_density(k.alpha, t) * std::exp(-c * t);
        } else if constexpr (std::is_same_v<K, kind::SumOfStables>) {
          double d = power_law_levy_density(k.alpha, t);
          if (k.beta > 0.0) d += power_law_levy_density(k.beta, t);
          return d;
        } else if constexpr (std::is_same_v<K, kind::KilledShift>) {
          return eval_levy_density(*k.inner, t);
        } else if constexpr (std::is_same_v<K, kind::GeometricLikeExample>) {
          const auto* mix = phi.levy_mixture();
          double acc = 0.0;
          for (std::size_t i = 0; i < mix->rates.size(); ++i) {
            acc += mix->weights[i] * std::exp(-mix->rates[i] * t);
          }
          return acc;
        } else {
          if (!levy_density_spec(phi).derivative_inversion) {
            throw UnsupportedKindError("no Levy density representation for " + phi.name());
          }
          // phi'(l) = int t e^{-l t} mu(t) dt
          return talbot_invert([&](Complex s) { return phi.derivative(s); }, t) / t;
        }
      },
      phi.kind());
  if (!std::isfinite(v)) throw DomainError("eval_levy_density: non-finite value");
  return v;
}

double levy_tail(const Cbf& phi, double t) {
  if (!(t > 0.0)) throw DomainError("levy_tail: t must be positive");
  if (const auto* s = std::get_if<kind::Stable>(&phi.kind())) {
    return power_law_levy_tail(s->alpha, t);
  }
  if (const auto* s = std::get_if<kind::SumOfStables>(&phi.kind())) {
    return power_law_levy_tail(s->alpha, t) + (s->beta > 0.0 ? power_law_levy_tail(s->beta, t) : 0.0);
  }
  if (const auto* s = std::get_if<kind::RelativisticStable>(&phi.kind()); s && s->m == 0.0) {
    return power_law_levy_tail(s->alpha, t);
  }
  if (const auto* s = std::get_if<kind::KilledShift>(&phi.kind())) {
    return levy_tail(*s->inner, t);
  }
  if (const auto* mix = phi.levy_mixture()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < mix->rates.size(); ++i) {
      acc += mix->weights[i] / mix->rates[i] * std::exp(-mix->rates[i] * t);
    }
    return acc;
  }
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  opts.rel_tol = 1e-8;
  opts.max_depth = 12;
  const auto r = integrate(
      [&](double y) {
        const double s = t * std::exp(y);
        if (!(s < 1e250)) return 0.0;
        return eval_levy_density(phi, s) * s;
      },
      0.0, std::numeric_limits<double>::infinity(), opts);
  return r.value;
}

double check_levy_shift_bound(const Cbf& phi, const std::vector<double>& t_grid) {
  double worst = 0.0;
  for (double t : t_grid) {
    if (!(t > 1.0)) throw DomainError("check_levy_shift_bound: grid must lie in (1, inf)");
    worst = std::max(worst, eval_levy_density(phi, t) / eval_levy_density(phi, t + 1.0));
  }
  return worst;
}

RegVarProfile reg_var_profile(const Cbf& phi, const std::optional<RealFn>& ell_ref) {
  RegVarProfile p;
  p.alpha = phi.index();
  const double a = p.alpha;
  auto f = phi;
  p.ell = [f, a](double l) { return f(l) / std::pow(l, a / 2.0); };
  if (!ell_ref) {
    p.c_h = 1.0;
    return p;
  }
  double hi = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  for (double l : log_grid(1.0, 1e8, 200)) {
    const double q = phi(l) / (std::pow(l, a / 2.0) * (*ell_ref)(l));
    hi = std::max(hi, q);
    lo = std::min(lo, q);
  }
  p.c_h = std::max(hi, 1.0 / lo);
  return p;
}

std::string to_string(CheckVerdict v) {
  switch (v) {
    case CheckVerdict::pass:
      return "pass";
    case CheckVerdict::fail:
      return "fail";
    case CheckVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

MonotonicityReport check_complete_monotonicity(const RealFn& f, int order,
                                               const std::vector<double>& grid,
                                               MonotonicityClass cls) {
  if (order < 0 || order > 4) throw DomainError("check_complete_monotonicity: order in 0..4");
  static constexpr double binom[5][5] = {{1, 0, 0, 0, 0},
                                         {1, 1, 0, 0, 0},
                                         {1, 2, 1, 0, 0},
                                         {1, 3, 3, 1, 0},
                                         {1, 4, 6, 4, 1}};
  MonotonicityReport rep;
  auto forward_difference = [&](double x, double h, int n, double& scale) {
    double acc = 0.0;
    scale = 0.0;
    for (int k = 0; k <= n; ++k) {
      const double fk = f(x + k * h);
      scale = std::max(scale, std::abs(fk));
      acc += (((n - k) % 2 == 0) ? 1.0 : -1.0) * binom[n][k] * fk;
    }
    return acc;
  };
  for (double x : grid) {
    ++rep.points_checked;
    bool point_inconclusive = false;
    const double fx = f(x);
    if (cls == MonotonicityClass::bernstein || order >= 0) {
      if (fx < 0.0 && rep.verdict != CheckVerdict::fail) {
        rep.verdict = CheckVerdict::fail;
        rep.first_failure = {x, 0};
      }
    }
    const double h = 1e-2 * x;
    for (int n = 1; n <= order; ++n) {
      const double expected = cls == MonotonicityClass::completely_monotone
                                  ? ((n % 2 == 0) ? 1.0 : -1.0)
                                  : ((n % 2 == 0) ? -1.0 : 1.0);
      double scale_h = 0.0;
      double scale_h2 = 0.0;
      const double dh = forward_difference(x, h, n, scale_h) / std::pow(h, n);
      const double raw_h2 = forward_difference(x, h / 2.0, n, scale_h2);
      const double dh2 = raw_h2 / std::pow(h / 2.0, n);
      const double noise = 1e3 * kEps * scale_h2 * binom[n][n / 2] * 2.0;
      if (std::abs(raw_h2) < noise) {
        point_inconclusive = true;
        continue;
      }
      const double richardson = 2.0 * dh2 - dh;
      if (expected * richardson < 0.0 && expected * dh2 < 0.0) {
        if (rep.verdict != CheckVerdict::fail) {
          rep.verdict = CheckVerdict::fail;
          rep.first_failure = {x, n};
        }
      }
    }
    if (point_inconclusive) ++rep.inconclusive_points;
  }
  if (rep.verdict != CheckVerdict::fail && rep.inconclusive_points > 0) {
    rep.verdict = CheckVerdict::inconclusive;
  }
  return rep;
}

}  // namespace sbm
