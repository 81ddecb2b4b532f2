#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <variant>
#include <vector>

#include "sbm/bernstein.hpp"
#include "sbm/rng.hpp"

namespace sbm {

/// Points of R^d for d <= 3; unused coordinates stay 0.
using Point = std::array<double, 3>;

enum class SamplerMode {
  /// Exact positive-stable variates for Stable kinds, compound Poisson otherwise.
  automatic,
  exact_stable,
  compound_poisson,
};

struct PathConfig {
  /// Jumps of S below epsilon are replaced by their mean (drift compensation).
  double epsilon = 1e-4;
  double horizon = 50.0;
  /// Deterministic skeleton spacing.
  double step = 1e-3;
  std::uint64_t seed = 1;
  std::size_t paths = 10000;
  SamplerMode sampler = SamplerMode::automatic;
  /// 0 picks $SBM_THREADS or the hardware concurrency.
  unsigned threads = 0;
};

/// Throws ConfigError when the configuration is unusable.
void validate(const PathConfig& cfg);

struct McEstimate {
  double mean = 0.0;
  /// sample standard deviation / sqrt(n)
  double std_error = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  /// Paths dropped because the horizon was reached first.
  std::size_t censored = 0;
};

/// Mean and standard error by pairwise summation.
McEstimate estimate_of(const std::vector<double>& values, std::uint64_t seed,
                       std::size_t censored = 0);

// ---------------------------------------------------------------------------
// Domains
// ---------------------------------------------------------------------------

struct Ball {
  Point center{};
  double radius = 1.0;
};
/// (lo, hi) in d = 1
struct Interval {
  double lo = -1.0;
  double hi = 1.0;
};
/// Ball intersected with the open upper half-space {x_d > center_d}.
struct HalfBall {
  Point center{};
  double radius = 1.0;
};
struct Annulus {
  Point center{};
  double inner = 0.5;
  double outer = 1.0;
};

using Domain = std::variant<Ball, Interval, HalfBall, Annulus>;

bool contains(const Domain& domain, int d, const Point& x);
double norm(const Point& x, int d);
double distance(const Point& x, const Point& y, int d);

// ---------------------------------------------------------------------------
// Subordinator sampling
// ---------------------------------------------------------------------------

/// Increment sampler for S, built once per (phi, epsilon, mode).
///
/// Compound-Poisson mode: jumps above epsilon arrive at rate mu(epsilon, inf)
/// with sizes drawn by inverse transform from a 1024-knot table of the
/// normalized tail in log-log space (power-law extrapolation beyond the last
/// knot); jumps below epsilon contribute the drift int_0^eps s mu(s) ds.
/// Exact mode draws S_dt = dt^{2/alpha} S_1 with the Kanter representation of
/// the positive (alpha/2)-stable law.
class SubordinatorSampler {
 public:
  SubordinatorSampler(const Cbf& phi, double epsilon, SamplerMode mode = SamplerMode::automatic);

  bool exact() const { return exact_; }
  double jump_rate() const { return rate_; }
  double drift() const { return drift_; }

  /// One jump of size > epsilon (compound-Poisson mode only).
  double sample_jump(Philox& rng) const;
  /// S_{t+dt} - S_t.
  double increment(Philox& rng, double dt) const;
  /// S_1 for the stable kind (exact mode only).
  double stable_unit(Philox& rng) const;

 private:
  bool exact_ = false;
  double alpha_ = 1.0;
  double epsilon_ = 0.0;
  double rate_ = 0.0;
  double drift_ = 0.0;
  std::vector<double> log_s_;
  /// log(mu(s, inf) / mu(eps, inf)) at the knots, nonincreasing from 0.
  std::vector<double> log_q_;
};

/// cfg.paths independent draws of S_{dt}; draw i uses stream i.
std::vector<double> sample_subordinator_increments(const Cbf& phi, double dt,
                                                   const PathConfig& cfg);

// ---------------------------------------------------------------------------
// Exit problems
// ---------------------------------------------------------------------------

struct ExitSample {
  double tau = 0.0;
  Point exit_position{};
  /// The skeleton left the domain (always through a jump of X).  False for
  /// starts outside the domain (tau = 0) and for censored paths.
  bool exited_by_jump = false;
  bool censored = false;
};

struct ExitRun {
  /// One entry per path, in path order.
  std::vector<ExitSample> samples;
  std::size_t censored = 0;
  /// E[tau] over the uncensored paths.
  McEstimate tau;
};

/// Simulates X = B_S from x0 until it leaves `domain`.  Positions are
/// examined on the grid of spacing cfg.step and, in compound-Poisson mode, at
/// every jump epoch of S.  Path i uses stream (cfg.seed, i), so runs with the
/// same seed share randomness across starting points and domains.
ExitRun sample_exit(const Cbf& phi, int d, const Domain& domain, const Point& x0,
                    const PathConfig& cfg);

/// Same, reusing a prebuilt sampler.
ExitRun sample_exit(const SubordinatorSampler& sampler, int d, const Domain& domain,
                    const Point& x0, const PathConfig& cfg);

struct ExceedanceReport {
  McEstimate probability;
  /// probability / (phi(r^-2) t)
  double ratio = 0.0;
};

/// P(sup_{s<=t} |X_s - X_0| > r).
ExceedanceReport exceedance_probability(const Cbf& phi, int d, double r, double t,
                                        const PathConfig& cfg);

struct ExitTimeRow {
  double r = 0.0;
  McEstimate at_center;
  /// E_0[tau_{B(0,r)}] phi(r^-2)
  double scaled = 0.0;
  double offset = 0.0;
  McEstimate at_offset;
  /// 2 V(2r) V(r - |x|)
  double bound = 0.0;
  bool bound_holds = false;
};

struct ExitTimeReport {
  std::vector<ExitTimeRow> rows;
  RatioSpread scaled_window;
  bool pass = false;
};

/// For each r: E_0[tau] phi(r^-2), and E_x[tau] at |x| = offset_fraction r
/// against 2 V(2r) V(r - |x|) + 3 SE.  cfg.step and cfg.horizon are read in
/// units of the natural time scale 1 / phi(r^-2).
ExitTimeReport exit_time_bounds_check(const Cbf& phi, int d, const std::vector<double>& r_grid,
                                      const PathConfig& cfg, double offset_fraction = 0.5);

struct ExitHistogram {
  /// Bin edges on |y - center|.
  std::vector<double> edges;
  /// Fraction of uncensored paths whose exit falls in each bin.
  std::vector<double> mass;
  std::vector<double> std_error;
  /// d = 1 only: the same split by side (y < center, y > center).
  std::vector<double> mass_left;
  std::vector<double> mass_right;
  std::size_t n = 0;
  std::size_t censored = 0;
};

ExitHistogram exit_distribution_histogram(const Cbf& phi, int d, const Ball& ball,
                                          const Point& x0, const std::vector<double>& edges,
                                          const PathConfig& cfg);

/// Fraction of the run's uncensored exits with |y - center| >= R.
double exit_mass_beyond(const ExitRun& run, const Point& center, double R, int d);

/// P_y(T_A < tau_B) for a ball A (radius 0 means A is empty).
McEstimate hitting_before_exit(const Cbf& phi, int d, const Ball& target, const Point& y,
                               const Ball& enclosing, const PathConfig& cfg);

}  // namespace sbm
