#include "sbm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>

#include "sbm/errors.hpp"
#include "sbm/ladder.hpp"

namespace sbm {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kKnots = 1024;

enum class PathStop { exited, target, censored };

struct PathEnd {
  double t = 0.0;
  Point x{};
  PathStop stop = PathStop::censored;
};

// `classify(x)` returns 0 while the path should continue, 1 on exit and 2
// when a target set is hit.
template <class Classify>
PathEnd run_path(const SubordinatorSampler& sampler, int d, Point x, double step,
                 double horizon, Philox& rng, const Classify& classify) {
  auto move = [&](double ds) {
    const double sigma = std::sqrt(2.0 * ds);
    for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] += sigma * rng.normal();
  };
  auto verdict = [&](double t) -> std::optional<PathEnd> {
    const int c = classify(x);
    if (c == 0) return std::nullopt;
    return PathEnd{t, x, c == 1 ? PathStop::exited : PathStop::target};
  };
  const auto n_steps = static_cast<std::uint64_t>(std::ceil(horizon / step - 1e-12));
  if (sampler.exact()) {
    for (std::uint64_t k = 1; k <= n_steps; ++k) {
      const double t = std::min(static_cast<double>(k) * step, horizon);
      const double dt = t - std::min(static_cast<double>(k - 1) * step, horizon);
      move(sampler.increment(rng, dt));
      if (auto end = verdict(t)) return *end;
    }
    return PathEnd{horizon, x, PathStop::censored};
  }
  const double rate = sampler.jump_rate();
  const double drift = sampler.drift();
  double t = 0.0;
  double next_jump = rng.exponential() / rate;
  for (std::uint64_t k = 1; k <= n_steps; ++k) {
    const double grid = std::min(static_cast<double>(k) * step, horizon);
    while (next_jump <= grid) {
      move(drift * (next_jump - t) + sampler.sample_jump(rng));
      t = next_jump;
      if (auto end = verdict(t)) return *end;
      next_jump += rng.exponential() / rate;
    }
    move(drift * (grid - t));
    t = grid;
    if (auto end = verdict(t)) return *end;
  }
  return PathEnd{horizon, x, PathStop::censored};
}

double small_jump_mean(const Cbf& phi, double eps) {
  if (const auto* s = std::get_if<kind::Stable>(&phi.kind())) {
    const double a = 0.5 * s->alpha;
    return a / std::tgamma(1.0 - a) * std::pow(eps, 1.0 - a) / (1.0 - a);
  }
  // s = eps e^{-y} down to s_cut; below s_cut mu follows its power law
  // s^{-1-alpha/2} and the remainder is integrated in closed form.
  constexpr double s_cut = 1e-150;
  const double y_max = std::log(eps / s_cut);
  QuadratureOptions q;
  q.abs_tol = 0.0;
  q.rel_tol = 1e-8;
  q.max_depth = 12;
  const auto res = integrate_unchecked(
      [&](double y) {
        const double s = eps * std::exp(-y);
        return eval_levy_density(phi, s) * s * s;
      },
      0.0, y_max, q);
  const double rest = eval_levy_density(phi, s_cut) * s_cut * s_cut / (1.0 - 0.5 * phi.index());
  if (!std::isfinite(res.value) || res.error > 1e-5 * std::abs(res.value)) {
    throw NumericAccuracyError("small-jump drift compensation did not converge", res.error);
  }
  return res.value + rest;
}

}  // namespace

void validate(const PathConfig& cfg) {
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  if (!(cfg.step > 0.0)) throw ConfigError("step must be positive");
  if (!(cfg.horizon > 0.0)) throw ConfigError("horizon must be positive");
  if (cfg.step > cfg.horizon) throw ConfigError("step must not exceed the horizon");
  if (cfg.paths == 0) throw ConfigError("paths must be positive");
}

McEstimate estimate_of(const std::vector<double>& values, std::uint64_t seed,
                       std::size_t censored) {
  McEstimate e;
  e.seed = seed;
  e.censored = censored;
  e.n = values.size();
  if (values.empty()) return e;
  const double n = static_cast<double>(values.size());
  e.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> dev(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double z = values[i] - e.mean;
      dev[i] = z * z;
    }
    e.std_error = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
  }
  return e;
}

double norm(const Point& x, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  return std::sqrt(s);
}

double distance(const Point& x, const Point& y, int d) {
  Point z{};
  for (std::size_t i = 0; i < 3; ++i) z[i] = x[i] - y[i];
  return norm(z, d);
}

bool contains(const Domain& domain, int d, const Point& x) {
  return std::visit(
      [&](const auto& D) -> bool {
        using T = std::decay_t<decltype(D)>;
        if constexpr (std::is_same_v<T, Ball>) {
          return distance(x, D.center, d) < D.radius;
        } else if constexpr (std::is_same_v<T, Interval>) {
          return x[0] > D.lo && x[0] < D.hi;
        } else if constexpr (std::is_same_v<T, HalfBall>) {
          const auto top = static_cast<std::size_t>(d - 1);
          return distance(x, D.center, d) < D.radius && x[top] > D.center[top];
        } else {
          const double r = distance(x, D.center, d);
          return r > D.inner && r < D.outer;
        }
      },
      domain);
}

// ---------------------------------------------------------------------------

SubordinatorSampler::SubordinatorSampler(const Cbf& phi, double epsilon, SamplerMode mode)
    : alpha_(phi.index()), epsilon_(epsilon) {
  if (phi.killing() > 0.0) throw DomainError("subordinator sampling needs an unkilled phi");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw ConfigError("epsilon must lie in (0, 1)");
  const bool is_stable = std::holds_alternative<kind::Stable>(phi.kind());
  if (mode == SamplerMode::exact_stable && !is_stable) {
    throw ConfigError("the exact sampler is only available for the stable kind");
  }
  exact_ = is_stable && mode != SamplerMode::compound_poisson;
  if (exact_) return;

  rate_ = levy_tail(phi, epsilon);
  if (!(rate_ > 0.0) || !std::isfinite(rate_)) {
    throw NumericAccuracyError("jump rate above epsilon is not finite and positive", rate_);
  }
  drift_ = small_jump_mean(phi, epsilon);

  // Upper end of the table: where the normalized tail drops below 1e-13,
  // capped at 16 decades above epsilon.
  double s_max = epsilon;
  for (int decade = 0; decade < 16; ++decade) {
    s_max *= 10.0;
    double q = 0.0;
    try {
      q = levy_tail(phi, s_max) / rate_;
    } catch (const std::exception&) {
      s_max /= 10.0;
      break;
    }
    if (!(q > 1e-13)) break;
  }
  const auto knots = log_grid(epsilon, s_max, kKnots);
  log_s_.reserve(kKnots);
  log_q_.reserve(kKnots);
  double prev = 0.0;
  for (std::size_t k = 0; k < knots.size(); ++k) {
    double q = 1.0;
    if (k > 0) {
      try {
        q = levy_tail(phi, knots[k]) / rate_;
      } catch (const std::exception&) {
        break;
      }
    }
    if (!(q > 0.0) || !std::isfinite(q)) break;
    const double lq = std::min(std::log(q), prev);
    log_s_.push_back(std::log(knots[k]));
    log_q_.push_back(lq);
    prev = lq;
  }
  if (log_s_.size() < 2) throw NumericAccuracyError("jump size table is degenerate", 0.0);
}

double SubordinatorSampler::sample_jump(Philox& rng) const {
  const double target = std::log(rng.uniform());
  const std::size_t last = log_q_.size() - 1;
  if (target <= log_q_[last]) {
    const double dq = log_q_[last] - log_q_[last - 1];
    if (dq >= 0.0) return std::exp(log_s_[last]);
    const double slope = (log_s_[last] - log_s_[last - 1]) / dq;
    return std::exp(log_s_[last] + (target - log_q_[last]) * slope);
  }
  // log_q_ is nonincreasing: first knot strictly below the target.
  const auto it = std::upper_bound(log_q_.begin(), log_q_.end(), target, std::greater<>());
  const auto j = static_cast<std::size_t>(it - log_q_.begin());
  const double q0 = log_q_[j - 1], q1 = log_q_[j];
  const double w = q0 == q1 ? 0.0 : (target - q0) / (q1 - q0);
  return std::exp(log_s_[j - 1] + w * (log_s_[j] - log_s_[j - 1]));
}

double SubordinatorSampler::stable_unit(Philox& rng) const {
  // Kanter: S = sin(aU) / sin(U)^{1/a} * (sin((1-a)U) / E)^{(1-a)/a}
  const double a = 0.5 * alpha_;
  const double u = kPi * rng.uniform();
  const double e = rng.exponential();
  return std::sin(a * u) / std::pow(std::sin(u), 1.0 / a) *
         std::pow(std::sin((1.0 - a) * u) / e, (1.0 - a) / a);
}

double SubordinatorSampler::increment(Philox& rng, double dt) const {
  if (!(dt > 0.0)) return 0.0;
  if (exact_) return std::pow(dt, 2.0 / alpha_) * stable_unit(rng);
  double s = drift_ * dt;
  for (double t = rng.exponential() / rate_; t < dt; t += rng.exponential() / rate_) {
    s += sample_jump(rng);
  }
  return s;
}

std::vector<double> sample_subordinator_increments(const Cbf& phi, double dt,
                                                   const PathConfig& cfg) {
  validate(cfg);
  if (dt < 0.0) throw DomainError("dt must be nonnegative");
  const SubordinatorSampler sampler(phi, cfg.epsilon, cfg.sampler);
  std::vector<double> out(cfg.paths, 0.0);
  parallel_for(cfg.paths, resolve_thread_count(cfg.threads), [&](std::size_t i) {
    Philox rng(cfg.seed, i);
    out[i] = sampler.increment(rng, dt);
  });
  return out;
}

// ---------------------------------------------------------------------------

ExitRun sample_exit(const SubordinatorSampler& sampler, int d, const Domain& domain,
                    const Point& x0, const PathConfig& cfg) {
  validate(cfg);
  if (d < 1 || d > 3) throw DomainError("sample_exit: d must be 1, 2 or 3");
  ExitRun run;
  run.samples.resize(cfg.paths);
  if (!contains(domain, d, x0)) {
    for (auto& s : run.samples) s.exit_position = x0;
    run.tau = estimate_of(std::vector<double>(cfg.paths, 0.0), cfg.seed);
    return run;
  }
  parallel_for(cfg.paths, resolve_thread_count(cfg.threads), [&](std::size_t i) {
    Philox rng(cfg.seed, i);
    const auto end = run_path(sampler, d, x0, cfg.step, cfg.horizon, rng,
                              [&](const Point& x) { return contains(domain, d, x) ? 0 : 1; });
    auto& s = run.samples[i];
    s.tau = end.t;
    s.exit_position = end.x;
    s.censored = end.stop == PathStop::censored;
    s.exited_by_jump = !s.censored;
  });
  std::vector<double> taus;
  taus.reserve(cfg.paths);
  for (const auto& s : run.samples) {
    if (s.censored) {
      ++run.censored;
    } else {
      taus.push_back(s.tau);
    }
  }
  run.tau = estimate_of(taus, cfg.seed, run.censored);
  return run;
}

ExitRun sample_exit(const Cbf& phi, int d, const Domain& domain, const Point& x0,
                    const PathConfig& cfg) {
  validate(cfg);
  return sample_exit(SubordinatorSampler(phi, cfg.epsilon, cfg.sampler), d, domain, x0, cfg);
}

ExceedanceReport exceedance_probability(const Cbf& phi, int d, double r, double t,
                                        const PathConfig& cfg) {
  if (!(r > 0.0)) throw DomainError("exceedance_probability: r must be positive");
  if (t < 0.0) throw DomainError("exceedance_probability: t must be nonnegative");
  ExceedanceReport rep;
  if (t == 0.0) {
    validate(cfg);
    rep.probability = estimate_of(std::vector<double>(cfg.paths, 0.0), cfg.seed);
    return rep;
  }
  PathConfig c = cfg;
  c.horizon = t;
  c.step = std::min(cfg.step, t);
  const auto run = sample_exit(phi, d, Ball{Point{}, r}, Point{}, c);
  std::vector<double> hit(run.samples.size());
  for (std::size_t i = 0; i < hit.size(); ++i) hit[i] = run.samples[i].censored ? 0.0 : 1.0;
  rep.probability = estimate_of(hit, cfg.seed);
  rep.ratio = rep.probability.mean / (phi(1.0 / (r * r)) * t);
  return rep;
}

ExitTimeReport exit_time_bounds_check(const Cbf& phi, int d, const std::vector<double>& r_grid,
                                      const PathConfig& cfg, double offset_fraction) {
  if (!(offset_fraction >= 0.0 && offset_fraction < 1.0)) {
    throw DomainError("offset_fraction must lie in [0, 1)");
  }
  ExitTimeReport rep;
  std::vector<double> scaled;
  rep.pass = true;
  for (double r : r_grid) {
    if (!(r > 0.0)) throw DomainError("exit_time_bounds_check: radii must be positive");
    const double scale = 1.0 / phi(1.0 / (r * r));
    PathConfig c = cfg;
    c.step = cfg.step * scale;
    c.horizon = cfg.horizon * scale;
    c.epsilon = std::min(cfg.epsilon * r * r, cfg.epsilon);
    const SubordinatorSampler sampler(phi, c.epsilon, c.sampler);
    const Ball ball{Point{}, r};
    ExitTimeRow row;
    row.r = r;
    row.at_center = sample_exit(sampler, d, ball, Point{}, c).tau;
    row.scaled = row.at_center.mean / scale;
    row.offset = offset_fraction * r;
    row.at_offset = sample_exit(sampler, d, ball, Point{row.offset, 0.0, 0.0}, c).tau;
    row.bound = 2.0 * renewal_function_V(phi, 2.0 * r) * renewal_function_V(phi, r - row.offset);
    row.bound_holds = row.at_offset.mean <= row.bound + 3.0 * row.at_offset.std_error;
    rep.pass = rep.pass && row.bound_holds && row.scaled > 0.0 && std::isfinite(row.scaled);
    scaled.push_back(row.scaled);
    rep.rows.push_back(row);
  }
  if (!scaled.empty()) rep.scaled_window = spread_of(scaled);
  return rep;
}

ExitHistogram exit_distribution_histogram(const Cbf& phi, int d, const Ball& ball,
                                          const Point& x0, const std::vector<double>& edges,
                                          const PathConfig& cfg) {
  if (edges.size() < 2 || !std::is_sorted(edges.begin(), edges.end())) {
    throw DomainError("histogram edges must be increasing with at least two entries");
  }
  const auto run = sample_exit(phi, d, ball, x0, cfg);
  ExitHistogram h;
  h.edges = edges;
  const std::size_t bins = edges.size() - 1;
  std::vector<std::size_t> all(bins, 0), left(bins, 0), right(bins, 0);
  for (const auto& s : run.samples) {
    if (!s.exited_by_jump) continue;
    const double rho = distance(s.exit_position, ball.center, d);
    const auto it = std::upper_bound(edges.begin(), edges.end(), rho);
    if (it == edges.begin() || it == edges.end()) continue;
    const auto b = static_cast<std::size_t>(it - edges.begin()) - 1;
    ++all[b];
    if (s.exit_position[0] < ball.center[0]) {
      ++left[b];
    } else {
      ++right[b];
    }
  }
  h.censored = run.censored;
  h.n = run.samples.size() - run.censored;
  const double n = static_cast<double>(h.n);
  auto frac = [n](std::size_t c) { return n > 0 ? static_cast<double>(c) / n : 0.0; };
  for (std::size_t b = 0; b < bins; ++b) {
    const double p = frac(all[b]);
    h.mass.push_back(p);
    h.std_error.push_back(n > 1 ? std::sqrt(p * (1.0 - p) / (n - 1.0)) : 0.0);
    if (d == 1) {
      h.mass_left.push_back(frac(left[b]));
      h.mass_right.push_back(frac(right[b]));
    }
  }
  return h;
}

double exit_mass_beyond(const ExitRun& run, const Point& center, double R, int d) {
  std::size_t count = 0, n = 0;
  for (const auto& s : run.samples) {
    if (s.censored) continue;
    ++n;
    if (distance(s.exit_position, center, d) >= R) ++count;
  }
  return n == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(n);
}

McEstimate hitting_before_exit(const Cbf& phi, int d, const Ball& target, const Point& y,
                               const Ball& enclosing, const PathConfig& cfg) {
  validate(cfg);
  if (!(target.radius > 0.0)) return estimate_of(std::vector<double>(cfg.paths, 0.0), cfg.seed);
  const SubordinatorSampler sampler(phi, cfg.epsilon, cfg.sampler);
  std::vector<double> hit(cfg.paths, 0.0);
  std::vector<char> censored(cfg.paths, 0);
  auto classify = [&](const Point& x) {
    if (distance(x, target.center, d) < target.radius) return 2;
    return distance(x, enclosing.center, d) < enclosing.radius ? 0 : 1;
  };
  parallel_for(cfg.paths, resolve_thread_count(cfg.threads), [&](std::size_t i) {
    const int c0 = classify(y);
    if (c0 != 0) {
      hit[i] = c0 == 2 ? 1.0 : 0.0;
      return;
    }
    Philox rng(cfg.seed, i);
    const auto end = run_path(sampler, d, y, cfg.step, cfg.horizon, rng, classify);
    hit[i] = end.stop == PathStop::target ? 1.0 : 0.0;
    censored[i] = end.stop == PathStop::censored;
  });
  std::vector<double> kept;
  kept.reserve(cfg.paths);
  std::size_t n_cens = 0;
  for (std::size_t i = 0; i < cfg.paths; ++i) {
    if (censored[i]) {
      ++n_cens;
    } else {
      kept.push_back(hit[i]);
    }
  }
  return estimate_of(kept, cfg.seed, n_cens);
}

}  // namespace sbm
