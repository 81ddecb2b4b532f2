#include "sbm/numeric.hpp"

#include <algorithm>
#include <array>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "sbm/errors.hpp"

namespace sbm {

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi >= lo) || n == 0) {
    throw DomainError("log_grid: need 0 < lo <= hi and n >= 1");
  }
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

std::vector<double> refine_log_grid(double lo, double hi, std::size_t n) {
  return log_grid(lo, hi, n < 2 ? n : 2 * n - 1);
}

namespace {

double pairwise_sum_impl(const double* p, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += p[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(p, half) + pairwise_sum_impl(p + half, n - half);
}

}  // namespace

double pairwise_sum(std::span<const double> values) {
  return pairwise_sum_impl(values.data(), values.size());
}

RatioSpread spread_of(std::span<const double> values) {
  if (values.empty()) throw DomainError("spread_of: empty input");
  RatioSpread s{values[0], values[0]};
  for (double v : values) {
    s.min = std::min(s.min, v);
    s.max = std::max(s.max, v);
  }
  return s;
}

// ---------------------------------------------------------------------------

QuadratureResult integrate_unchecked(const RealFn& f, double a, double b,
                                     const QuadratureOptions& opts) {
  using boost::math::quadrature::gauss_kronrod;
  QuadratureResult r;
  r.value = gauss_kronrod<double, 15>::integrate(f, a, b, opts.max_depth, opts.rel_tol,
                                                 &r.error);
  return r;
}

QuadratureResult integrate(const RealFn& f, double a, double b,
                           const QuadratureOptions& opts) {
  QuadratureResult r = integrate_unchecked(f, a, b, opts);
  if (!std::isfinite(r.value)) {
    throw NumericAccuracyError("quadrature produced a non-finite value", r.error);
  }
  const double target = std::max(opts.abs_tol, opts.rel_tol * std::abs(r.value));
  if (r.error > target) {
    throw NumericAccuracyError("adaptive quadrature did not converge", r.error);
  }
  return r;
}

QuadratureResult integrate_endpoint_singular(const RealFn& f, double a, double b,
                                             double rel_tol) {
  // The rule lazily extends its abscissa tables, so each thread keeps its own.
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  QuadratureResult r;
  auto g = [&f](double x) -> double { return f(x); };
  r.value = rule.integrate(g, a, b, rel_tol, &r.error);
  if (!std::isfinite(r.value)) {
    throw NumericAccuracyError("tanh-sinh quadrature produced a non-finite value",
                               r.error);
  }
  return r;
}

// ---------------------------------------------------------------------------

double talbot_invert(const ComplexFn& transform, double t, int nodes) {
  if (!(t > 0.0)) throw DomainError("talbot_invert: t must be positive");
  if (nodes < 2) throw DomainError("talbot_invert: need at least 2 nodes");
  const double m = static_cast<double>(nodes);
  const double r = 2.0 * m / (5.0 * t);
  double acc = 0.5 * std::exp(r * t) * transform(Complex(r, 0.0)).real();
  for (int k = 1; k < nodes; ++k) {
    const double theta = static_cast<double>(k) * std::numbers::pi / m;
    const double cot = std::cos(theta) / std::sin(theta);
    const Complex s(r * theta * cot, r * theta);
    const double sigma = theta + (theta * cot - 1.0) * cot;
    acc += (std::exp(t * s) * transform(s) * Complex(1.0, sigma)).real();
  }
  return r / m * acc;
}

namespace {

std::vector<double> stehfest_weights(int terms) {
  const int half = terms / 2;
  auto fact = [](int n) { return std::tgamma(static_cast<double>(n) + 1.0); };
  std::vector<double> v(static_cast<std::size_t>(terms));
  for (int k = 1; k <= terms; ++k) {
    double s = 0.0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      s += std::pow(static_cast<double>(j), half) * fact(2 * j) /
           (fact(half - j) * fact(j) * fact(j - 1) * fact(k - j) * fact(2 * j - k));
    }
    v[static_cast<std::size_t>(k - 1)] = ((k + half) % 2 == 0 ? 1.0 : -1.0) * s;
  }
  return v;
}

}  // namespace

double gaver_stehfest_invert(const RealFn& transform, double t, int terms) {
  if (!(t > 0.0)) throw DomainError("gaver_stehfest_invert: t must be positive");
  if (terms < 2 || terms % 2 != 0) {
    throw DomainError("gaver_stehfest_invert: number of terms must be even");
  }
  const auto weights = stehfest_weights(terms);
  const double ln2_t = std::numbers::ln2 / t;
  double acc = 0.0;
  for (int k = 1; k <= terms; ++k) {
    acc += weights[static_cast<std::size_t>(k - 1)] * transform(ln2_t * k);
  }
  return ln2_t * acc;
}

InversionResult talbot_invert_checked(const ComplexFn& transform, double t, int nodes) {
  InversionResult out;
  out.value = talbot_invert(transform, t, nodes);
  const double finer = talbot_invert(transform, t, nodes + nodes / 2);
  const double scale = std::abs(out.value);
  out.residual = scale > 0.0 ? std::abs(finer - out.value) / scale
                             : std::abs(finer - out.value);
  return out;
}

// ---------------------------------------------------------------------------

unsigned resolve_thread_count(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SBM_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, unsigned threads,
                  const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(std::max(1u, threads), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        for (std::size_t i = lo; i < hi; ++i) body(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace sbm
